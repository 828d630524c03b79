#include "ucm/ast.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <utility>

namespace ucm {

namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<std::string_view, E>, N>& table, std::string_view s)
{
    for (const auto& [text, value] : table)
        if (text == s)
            return value;
    return std::nullopt;
}

template <typename E, std::size_t N>
std::string_view reverseLookup(const std::array<std::pair<std::string_view, E>, N>& table, E v)
{
    for (const auto& [text, value] : table)
        if (value == v)
            return text;
    return "?";
}

constexpr std::array<std::pair<std::string_view, ModeKind>, 4> kModeKinds{{
    {"normal", ModeKind::Normal},
    {"degraded", ModeKind::Degraded},
    {"restricted", ModeKind::Restricted},
    {"emergency", ModeKind::Emergency},
}};

constexpr std::array<std::pair<std::string_view, ExceptionCategory>, 4> kExceptionCategories{{
    {"HardwareException", ExceptionCategory::Hardware},
    {"SoftwareException", ExceptionCategory::Software},
    {"NetworkException", ExceptionCategory::Network},
    {"EnvironmentException", ExceptionCategory::Environment},
}};

constexpr std::array<std::pair<std::string_view, ActorCategory>, 8> kActorCategories{{
    {"Human", ActorCategory::Human},
    {"Software", ActorCategory::Software},
    {"PhysicalEntity", ActorCategory::PhysicalEntity},
    {"Device", ActorCategory::Device},
    {"Sensor", ActorCategory::Sensor},
    {"Actuator", ActorCategory::Actuator},
    {"Tag", ActorCategory::Tag},
    {"Reader", ActorCategory::Reader},
}};

constexpr std::array<std::pair<std::string_view, UseCaseLevel>, 3> kLevels{{
    {"summary", UseCaseLevel::Summary},
    {"user-goal", UseCaseLevel::UserGoal},
    {"sub-function", UseCaseLevel::SubFunction},
}};

constexpr std::array<std::pair<std::string_view, ActorRole>, 3> kRoles{{
    {"primary", ActorRole::Primary},
    {"secondary", ActorRole::Secondary},
    {"facilitator", ActorRole::Facilitator},
}};

constexpr std::array<std::pair<std::string_view, ContextRelation>, 2> kRelations{{
    {"interrupt-continue", ContextRelation::InterruptContinue},
    {"interrupt-fail", ContextRelation::InterruptFail},
}};

constexpr std::array<std::pair<std::string_view, TimeUnit>, 3> kUnits{{
    {"ms", TimeUnit::Milliseconds},
    {"s", TimeUnit::Seconds},
    {"min", TimeUnit::Minutes},
}};

constexpr std::array<std::pair<std::string_view, OutcomeKind>, 5> kOutcomes{{
    {"success", OutcomeKind::Success},
    {"failure", OutcomeKind::Failure},
    {"degraded", OutcomeKind::Degraded},
    {"abandoned", OutcomeKind::Abandoned},
    {"continue", OutcomeKind::Continue},
}};

constexpr std::array<std::pair<std::string_view, BlockKind>, 2> kBlockKinds{{
    {"alternative", BlockKind::Alternative},
    {"exceptional", BlockKind::Exceptional},
}};

constexpr std::array<std::pair<std::string_view, StepKind>, 6> kStepKinds{{
    {"interaction", StepKind::Interaction},
    {"invocation", StepKind::Invocation},
    {"condition", StepKind::Condition},
    {"internal", StepKind::Internal},
    {"control-flow", StepKind::ControlFlow},
    {"exception-raise", StepKind::ExceptionRaise},
}};

std::optional<int> parseInt(std::string_view s)
{
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        return std::nullopt;
    return value;
}

void clear(SourceSpan& span) { span = SourceSpan{}; }

void strip(Name& n) { clear(n.span); }
void strip(LabelRef& l) { clear(l.span); }
void strip(ExceptionRef& e) { clear(e.span); }
void strip(ModeSwitch& m)
{
    clear(m.span);
    strip(m.mode);
}
void strip(Outcome& o)
{
    clear(o.span);
    if (o.continueTarget)
        strip(*o.continueTarget);
}

void strip(Step& step)
{
    clear(step.span);
    strip(step.label);
    std::visit(
        [](auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Interaction>)
            {
                strip(p.source);
                strip(p.target);
            }
            else if constexpr (std::is_same_v<T, Invocation>)
                strip(p.target);
            else if constexpr (std::is_same_v<T, Goto>)
                strip(p.target);
            else if constexpr (std::is_same_v<T, Repeat>)
            {
                strip(p.first);
                strip(p.last);
            }
            else if constexpr (std::is_same_v<T, Raise>)
                strip(p.exception);
        },
        step.payload);
}

void strip(ExtensionBlock& block)
{
    clear(block.span);
    strip(block.label);
    if (block.entrySwitch)
        strip(*block.entrySwitch);
    if (block.exitSwitch)
        strip(*block.exitSwitch);
    if (block.outcome)
        strip(*block.outcome);
    for (auto& s : block.steps)
        strip(s);
    for (auto& b : block.blocks)
        strip(b);
}

void strip(ActorRef& a)
{
    clear(a.span);
    if (a.multiplicity)
        clear(a.multiplicity->span);
}

} // namespace

std::string_view toString(ModeKind v) { return reverseLookup(kModeKinds, v); }
std::string_view toString(ExceptionCategory v) { return reverseLookup(kExceptionCategories, v); }
std::string_view toString(ActorCategory v) { return reverseLookup(kActorCategories, v); }
std::string_view toString(UseCaseLevel v) { return reverseLookup(kLevels, v); }
std::string_view toString(ActorRole v) { return reverseLookup(kRoles, v); }
std::string_view toString(ContextRelation v) { return reverseLookup(kRelations, v); }
std::string_view toString(TimeUnit v) { return reverseLookup(kUnits, v); }
std::string_view toString(OutcomeKind v) { return reverseLookup(kOutcomes, v); }
std::string_view toString(BlockKind v) { return reverseLookup(kBlockKinds, v); }
std::string_view toString(StepKind v) { return reverseLookup(kStepKinds, v); }

std::optional<ModeKind> modeKindFromString(std::string_view s) { return lookup(kModeKinds, s); }
std::optional<ExceptionCategory> exceptionCategoryFromString(std::string_view s)
{
    return lookup(kExceptionCategories, s);
}
std::optional<ActorCategory> actorCategoryFromString(std::string_view s) { return lookup(kActorCategories, s); }
std::optional<UseCaseLevel> levelFromString(std::string_view s) { return lookup(kLevels, s); }
std::optional<ActorRole> actorRoleFromString(std::string_view s) { return lookup(kRoles, s); }
std::optional<ContextRelation> relationFromString(std::string_view s) { return lookup(kRelations, s); }
std::optional<TimeUnit> timeUnitFromString(std::string_view s) { return lookup(kUnits, s); }
std::optional<OutcomeKind> outcomeKindFromString(std::string_view s) { return lookup(kOutcomes, s); }
std::optional<BlockKind> blockKindFromString(std::string_view s) { return lookup(kBlockKinds, s); }

std::string_view categoryWord(ExceptionCategory v)
{
    switch (v)
    {
    case ExceptionCategory::Hardware: return "hardware";
    case ExceptionCategory::Software: return "software";
    case ExceptionCategory::Network: return "network";
    case ExceptionCategory::Environment: return "environment";
    }
    return "?";
}

std::string_view categoryWord(ActorCategory v)
{
    switch (v)
    {
    case ActorCategory::Human: return "human";
    case ActorCategory::Software: return "software";
    case ActorCategory::PhysicalEntity: return "physical-entity";
    case ActorCategory::Device: return "device";
    case ActorCategory::Sensor: return "sensor";
    case ActorCategory::Actuator: return "actuator";
    case ActorCategory::Tag: return "tag";
    case ActorCategory::Reader: return "reader";
    }
    return "?";
}

bool isDeviceCategory(ActorCategory c)
{
    return c == ActorCategory::Device || c == ActorCategory::Sensor || c == ActorCategory::Actuator ||
           c == ActorCategory::Tag || c == ActorCategory::Reader;
}

std::optional<StepLabel> StepLabel::parse(std::string_view text)
{
    std::size_t i = 0;
    auto readDigits = [&]() -> std::optional<int> {
        const std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            ++i;
        if (start == i)
            return std::nullopt;
        return parseInt(text.substr(start, i - start));
    };

    StepLabel label;
    auto first = readDigits();
    if (!first)
        return std::nullopt;
    label.anchor = *first;
    if (i < text.size() && text[i] == '-')
    {
        ++i;
        auto last = readDigits();
        if (!last)
            return std::nullopt;
        label.anchorEnd = *last;
    }
    while (i < text.size())
    {
        const char c = text[i];
        if (c < 'a' || c > 'z')
            return std::nullopt;
        ++i;
        Part part{c, std::nullopt};
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            part.number = readDigits();
        label.suffix.push_back(part);
    }
    return label;
}

std::string StepLabel::str() const
{
    std::string out = std::to_string(anchor);
    if (anchorEnd)
        out += "-" + std::to_string(*anchorEnd);
    for (const auto& part : suffix)
    {
        out.push_back(part.letter);
        if (part.number)
            out += std::to_string(*part.number);
    }
    return out;
}

std::optional<StepLabel> StepLabel::parent() const
{
    if (suffix.empty())
        return std::nullopt;
    StepLabel p = *this;
    if (p.suffix.back().number)
        p.suffix.back().number.reset();
    else
        p.suffix.pop_back();
    return p;
}

int StepLabel::finalNumber() const
{
    if (suffix.empty())
        return anchorEnd.value_or(anchor);
    return suffix.back().number.value_or(0);
}

StepLabel StepLabel::child(int n) const
{
    StepLabel c = *this;
    if (c.suffix.empty())
    {
        c.anchor = n;
        c.anchorEnd.reset();
    }
    else
    {
        c.suffix.back().number = n;
    }
    return c;
}

std::string ExceptionRef::qualifiedName() const
{
    return categoryText.empty() ? name : categoryText + "::" + name;
}

std::string ExceptionDef::qualifiedName() const
{
    return categoryText.empty() ? name : categoryText + "::" + name;
}

std::string ActorRef::qualifiedName() const
{
    return categoryText.empty() ? name : categoryText + "::" + name;
}

StepKind Step::kind() const
{
    switch (payload.index())
    {
    case 0: return StepKind::Interaction;
    case 1: return StepKind::Invocation;
    case 2: return StepKind::Condition;
    case 3: return StepKind::Internal;
    case 4:
    case 5: return StepKind::ControlFlow;
    default: return StepKind::ExceptionRaise;
    }
}

std::vector<const ActorRef*> UseCaseAst::allActors() const
{
    std::vector<const ActorRef*> out;
    for (const auto* list : {&primaryActors, &secondaryActors, &facilitatorActors})
        for (const auto& a : *list)
            out.push_back(&a);
    return out;
}

const ModeDecl* AstModel::defaultMode() const
{
    for (const auto& m : modes)
        if (m.isDefault)
            return &m;
    return nullptr;
}

AstModel withoutSpans(AstModel model)
{
    clear(model.span);
    for (auto& m : model.modes)
    {
        clear(m.span);
        for (auto& s : m.offeredServices)
            strip(s);
    }
    for (auto& e : model.exceptions)
        clear(e.span);
    for (auto& s : model.services)
    {
        clear(s.span);
        for (auto& g : s.goals)
            strip(g);
    }
    for (auto& uc : model.useCases)
    {
        clear(uc.span);
        clear(uc.nameSpan);
        for (auto* list : {&uc.primaryActors, &uc.secondaryActors, &uc.facilitatorActors})
            for (auto& a : *list)
                strip(a);
        for (auto& ctx : uc.contexts)
        {
            clear(ctx.span);
            strip(ctx.useCase);
            strip(ctx.exception);
        }
        if (uc.main)
        {
            clear(uc.main->span);
            if (uc.main->entrySwitch)
                strip(*uc.main->entrySwitch);
            if (uc.main->exitSwitch)
                strip(*uc.main->exitSwitch);
            if (uc.main->outcome)
                strip(*uc.main->outcome);
            for (auto& s : uc.main->steps)
                strip(s);
        }
        for (auto& b : uc.extensions)
            strip(b);
    }
    return model;
}

} // namespace ucm
