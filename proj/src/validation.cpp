#include "ucm/validation.hpp"

#include <algorithm>
#include <set>

namespace ucm {

namespace {

void append(Diagnostics& into, Diagnostics from)
{
    into.insert(into.end(), std::make_move_iterator(from.begin()), std::make_move_iterator(from.end()));
}

Diagnostics checkSequence(const std::vector<Step>& steps, const std::optional<StepLabel>& blockLabel)
{
    Diagnostics out;
    auto labelFor = [&](int n) { return blockLabel ? blockLabel->child(n) : StepLabel{n, std::nullopt, {}}; };

    for (std::size_t i = 0; i < steps.size(); ++i)
    {
        const StepLabel& actual = steps[i].label.label;
        const StepLabel expected = i == 0 ? labelFor(1) : labelFor(steps[i - 1].label.label.finalNumber() + 1);
        if (actual == expected)
            continue;
        std::string message = "step '" + actual.str() + "' is out of order";
        message += i == 0 ? "; the first step must be '" + expected.str() + "'"
                          : "; expected one of the steps that may follow '" + steps[i - 1].label.label.str() +
                                "': " + expected.str();
        out.push_back(makeDiagnostic(DiagCode::E002, std::move(message), steps[i].label.span, {expected.str()}));
    }
    return out;
}

void checkBlockOrderingRecursive(const ExtensionBlock& block, Diagnostics& out)
{
    append(out, checkStepOrdering(block));
    for (const auto& nested : block.blocks)
        checkBlockOrderingRecursive(nested, out);
}

bool isSystem(const Name& n) { return n.text == kSystemEndpoint; }

/// Best guess at the type of an untyped actor: the type it carries elsewhere
/// in the model, else a guess from its name.
std::string suggestActorType(const ResolvedModel& m, const std::string& name)
{
    for (const auto& uc : m.ast().useCases)
        for (const ActorRef* a : uc.allActors())
            if (a->name == name && a->category)
                return a->qualifiedName();

    auto endsWith = [&](std::string_view suffix) {
        return name.size() >= suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    std::string_view category = "Human";
    if (endsWith("Sensor") || endsWith("Camera"))
        category = "Sensor";
    else if (endsWith("Reader"))
        category = "Reader";
    else if (endsWith("Tag"))
        category = "Tag";
    else if (endsWith("Switch") || endsWith("Alarm"))
        category = "Device";
    else if (endsWith("Service") || endsWith("System") || endsWith("App"))
        category = "Software";
    else if (endsWith("Gate") || endsWith("Door") || endsWith("Exit") || endsWith("Device") || endsWith("Card") ||
             endsWith("Shelf") || endsWith("Station") || endsWith("Battery"))
        category = "PhysicalEntity";
    return std::string(category) + "::" + name;
}

std::vector<std::string> actorCategoryNames()
{
    std::vector<std::string> out;
    for (auto c : {ActorCategory::Human, ActorCategory::Software, ActorCategory::PhysicalEntity, ActorCategory::Device,
                   ActorCategory::Sensor, ActorCategory::Actuator, ActorCategory::Tag, ActorCategory::Reader})
        out.emplace_back(toString(c));
    return out;
}

std::vector<std::string> exceptionCategoryNames()
{
    std::vector<std::string> out;
    for (auto c : {ExceptionCategory::Hardware, ExceptionCategory::Software, ExceptionCategory::Network,
                   ExceptionCategory::Environment})
        out.emplace_back(toString(c));
    return out;
}

void checkExceptionType(const ResolvedModel& m, const std::string& categoryText,
                        const std::optional<ExceptionCategory>& category, const std::string& name,
                        const SourceSpan& span, const ExceptionRef* ref, Diagnostics& out)
{
    if (categoryText.empty())
    {
        std::vector<std::string> suggestions;
        const ExceptionDef* def = ref ? m.boundException(*ref) : nullptr;
        if (def && !def->categoryText.empty())
            suggestions.push_back(def->qualifiedName());
        else
            for (const auto& c : exceptionCategoryNames())
                suggestions.push_back(c + "::" + name);
        out.push_back(makeDiagnostic(DiagCode::E005, "exception '" + name + "' has no type", span,
                                     std::move(suggestions)));
    }
    else if (!category)
    {
        out.push_back(makeDiagnostic(DiagCode::E005,
                                     "unknown exception type '" + categoryText + "' for '" + name + "'", span,
                                     exceptionCategoryNames()));
    }
}

/// Qualified names of exceptions that at least one handler context names.
std::set<std::string> handledExceptions(const ResolvedModel& m)
{
    std::set<std::string> out;
    for (const auto& uc : m.ast().useCases)
        for (const auto& ctx : uc.contexts)
            if (const ExceptionDef* def = m.boundException(ctx.exception))
                out.insert(def->qualifiedName());
    return out;
}

/// Qualified names of exceptions raised by some step of `uc`.
std::set<std::string> raisedIn(const ResolvedModel& m, const UseCaseAst& uc)
{
    std::set<std::string> out;
    forEachStep(uc, [&](const Step& s) {
        if (const auto* r = s.as<Raise>())
            if (const ExceptionDef* def = m.boundException(r->exception))
                out.insert(def->qualifiedName());
    });
    return out;
}

void checkRaisePlacement(const std::vector<Step>& steps, Diagnostics& out)
{
    for (const auto& s : steps)
        if (s.as<Raise>())
            out.push_back(makeDiagnostic(DiagCode::E008,
                                         "exceptions may only be raised inside an exceptional extension block",
                                         s.span));
}

void checkAlternativeRaises(const ExtensionBlock& block, Diagnostics& out)
{
    if (block.kind == BlockKind::Alternative)
        checkRaisePlacement(block.steps, out);
    for (const auto& nested : block.blocks)
        checkAlternativeRaises(nested, out);
}

} // namespace

Diagnostics checkRequiredClauses(const UseCaseAst& uc)
{
    Diagnostics out;
    auto missing = [&](const std::string& clause) {
        out.push_back(makeDiagnostic(DiagCode::E001,
                                     std::string(uc.isHandler ? "handler" : "use case") + " '" + uc.name +
                                         "' is missing the mandatory " + clause + " clause",
                                     uc.nameSpan));
    };
    if (!uc.scope)
        missing("scope");
    if (!uc.level)
        missing("level");
    if (!uc.intention)
        missing("intention");
    if (!uc.multiplicity)
        missing("multiplicity");
    if (uc.primaryActors.empty())
        missing("primary actor");
    if (!uc.main)
        missing("main success scenario");
    if (uc.isHandler && uc.contexts.empty())
        missing("contexts & exceptions");
    return out;
}

Diagnostics checkStepOrdering(const Scenario& main) { return checkSequence(main.steps, std::nullopt); }

Diagnostics checkStepOrdering(const ExtensionBlock& block) { return checkSequence(block.steps, block.label.label); }

Diagnostics checkInteractionEndpoints(const ResolvedModel& m)
{
    Diagnostics out;
    for (const auto& uc : m.ast().useCases)
    {
        if (!uc.level || *uc.level == UseCaseLevel::SubFunction)
            continue;
        std::vector<std::string> declared;
        for (const ActorRef* a : uc.allActors())
            declared.push_back(a->name);
        std::string declaredList;
        for (const auto& n : declared)
            declaredList += (declaredList.empty() ? "" : ", ") + n;
        if (declaredList.empty())
            declaredList = "none";

        forEachStep(uc, [&](const Step& step) {
            const auto* inter = step.as<Interaction>();
            if (!inter)
                return;
            const bool fromSystem = isSystem(inter->source);
            const bool toSystem = isSystem(inter->target);
            if (fromSystem == toSystem)
            {
                out.push_back(makeDiagnostic(
                    DiagCode::E010,
                    fromSystem ? "interaction connects System with itself; one endpoint must be a declared actor"
                               : "interaction between '" + inter->source.text + "' and '" + inter->target.text +
                                     "' does not involve System",
                    step.span));
                return;
            }
            const Name& actor = fromSystem ? inter->target : inter->source;
            if (std::find(declared.begin(), declared.end(), actor.text) == declared.end())
                out.push_back(makeDiagnostic(DiagCode::E010,
                                             "interaction endpoint '" + actor.text + "' is not an actor of '" +
                                                 uc.name + "' (declared actors: " + declaredList + ")",
                                             actor.span, declared));
        });
    }
    return out;
}

Diagnostics checkActorTypes(const ResolvedModel& m)
{
    Diagnostics out;
    for (const auto& exc : m.ast().exceptions)
        checkExceptionType(m, exc.categoryText, exc.category, exc.name, exc.span, nullptr, out);

    for (const auto& uc : m.ast().useCases)
    {
        for (const ActorRef* a : uc.allActors())
        {
            if (a->categoryText.empty())
                out.push_back(makeDiagnostic(DiagCode::E005,
                                             "actor '" + a->name + "' has no type; write it as Type::" + a->name,
                                             a->span, {suggestActorType(m, a->name)}));
            else if (!a->category)
                out.push_back(makeDiagnostic(DiagCode::E005,
                                             "unknown actor type '" + a->categoryText + "' for '" + a->name +
                                                 "'; expected human, software, device (sensor, actuator, tag, "
                                                 "reader) or physical entity",
                                             a->span, actorCategoryNames()));
        }
        for (const auto& ctx : uc.contexts)
            checkExceptionType(m, ctx.exception.categoryText, ctx.exception.category, ctx.exception.name,
                               ctx.exception.span, &ctx.exception, out);
        forEachStep(uc, [&](const Step& s) {
            if (const auto* r = s.as<Raise>())
                checkExceptionType(m, r->exception.categoryText, r->exception.category, r->exception.name,
                                   r->exception.span, &r->exception, out);
        });
    }
    return out;
}

Diagnostics checkMultiplicity(const ResolvedModel& m)
{
    Diagnostics out;
    for (const auto& uc : m.ast().useCases)
        for (const ActorRef* a : uc.allActors())
            if (a->multiplicity && a->multiplicity->upper && a->multiplicity->lower > *a->multiplicity->upper)
                out.push_back(makeDiagnostic(DiagCode::E006,
                                             "multiplicity of '" + a->name + "' has lower bound " +
                                                 std::to_string(a->multiplicity->lower) + " above upper bound " +
                                                 std::to_string(*a->multiplicity->upper),
                                             a->multiplicity->span));
    return out;
}

Diagnostics checkExceptionRules(const ResolvedModel& m)
{
    Diagnostics out;
    const auto handled = handledExceptions(m);
    std::set<std::string> raisedAnywhere;

    for (const auto& uc : m.ast().useCases)
    {
        // (a) unhandled occurrences
        forEachStep(uc, [&](const Step& s) {
            const auto* r = s.as<Raise>();
            const ExceptionDef* def = r ? m.boundException(r->exception) : nullptr;
            if (!def)
                return;
            raisedAnywhere.insert(def->qualifiedName());
            if (!handled.count(def->qualifiedName()))
                out.push_back(makeDiagnostic(DiagCode::W001,
                                             "exception '" + def->qualifiedName() + "' raised in '" + uc.name +
                                                 "' is not handled by any handler",
                                             s.span));
        });

        // (b) handler contexts must name an exception the context can raise
        for (const auto& ctx : uc.contexts)
        {
            const ExceptionDef* def = m.boundException(ctx.exception);
            if (!def || def->isGlobal || !m.useCase(ctx.useCase.text))
                continue;
            bool raised = false;
            for (const auto& name : reachableUseCases(m, ctx.useCase.text))
                if (raisedIn(m, *m.useCase(name)).count(def->qualifiedName()))
                {
                    raised = true;
                    break;
                }
            if (!raised)
                out.push_back(makeDiagnostic(DiagCode::E007,
                                             "exception '" + def->qualifiedName() + "' does not appear in context '" +
                                                 ctx.useCase.text + "' or any use case it invokes",
                                             ctx.span));
        }

        // (c), (d) exceptional block shape
        forEachBlock(uc, [&](const ExtensionBlock& block, const std::vector<Step>&) {
            if (block.kind != BlockKind::Exceptional)
                return;
            const auto raises = std::count_if(block.steps.begin(), block.steps.end(),
                                              [](const Step& s) { return s.as<Raise>() != nullptr; });
            if (raises != 1)
                out.push_back(makeDiagnostic(DiagCode::E008,
                                             "exceptional block '" + block.label.label.str() +
                                                 "' must contain exactly one raise step (found " +
                                                 std::to_string(raises) + ")",
                                             block.label.span));
            if (!block.outcome || block.outcome->kind != OutcomeKind::Continue)
                return;
            for (const auto& s : block.steps)
            {
                const auto* r = s.as<Raise>();
                const ExceptionDef* def = r ? m.boundException(r->exception) : nullptr;
                if (def && !handled.count(def->qualifiedName()))
                    out.push_back(makeDiagnostic(DiagCode::E009,
                                                 "block '" + block.label.label.str() +
                                                     "' cannot continue: exception '" + def->qualifiedName() +
                                                     "' is never handled",
                                                 block.outcome->span));
            }
        });

        if (uc.main)
            checkRaisePlacement(uc.main->steps, out);
        for (const auto& block : uc.extensions)
            checkAlternativeRaises(block, out);
    }

    // (e) declared but never raised
    for (const auto& exc : m.ast().exceptions)
        if (!raisedAnywhere.count(exc.qualifiedName()))
            out.push_back(makeDiagnostic(DiagCode::W002,
                                         "exception '" + exc.qualifiedName() + "' is declared but never raised",
                                         exc.span));
    return out;
}

Diagnostics checkOutcomes(const ResolvedModel& m)
{
    Diagnostics out;
    for (const auto& uc : m.ast().useCases)
    {
        if (uc.main)
        {
            if (!uc.main->outcome)
                out.push_back(makeDiagnostic(DiagCode::E008,
                                             "main scenario of '" + uc.name + "' has no outcome", uc.main->span));
            else if (uc.main->outcome->kind != OutcomeKind::Success)
                out.push_back(makeDiagnostic(DiagCode::E011,
                                             "main success scenario of '" + uc.name + "' must end in success, not " +
                                                 std::string(toString(uc.main->outcome->kind)),
                                             uc.main->outcome->span, {"outcome success"}));
        }
        forEachBlock(uc, [&](const ExtensionBlock& block, const std::vector<Step>&) {
            if (!block.outcome)
                out.push_back(makeDiagnostic(DiagCode::E008,
                                             "extension block '" + block.label.label.str() + "' has no outcome",
                                             block.label.span));
        });
    }
    return out;
}

Diagnostics checkModeRules(const ResolvedModel& m)
{
    Diagnostics out;
    std::set<std::string> targeted;
    for (const auto& b : m.bindings())
        if (b.kind == ReferenceKind::ModeSwitchTarget)
            targeted.insert(b.target);
    for (const auto& mode : m.ast().modes)
        if (!mode.isDefault && !targeted.count(mode.name))
            out.push_back(makeDiagnostic(DiagCode::W003,
                                         "mode '" + mode.name + "' is never the target of a mode switch", mode.span));
    return out;
}

Diagnostics validate(const ResolvedModel& m)
{
    Diagnostics out;
    for (const auto& uc : m.ast().useCases)
    {
        append(out, checkRequiredClauses(uc));
        if (uc.main)
            append(out, checkStepOrdering(*uc.main));
        for (const auto& block : uc.extensions)
            checkBlockOrderingRecursive(block, out);
    }
    append(out, checkInteractionEndpoints(m));
    append(out, checkActorTypes(m));
    append(out, checkMultiplicity(m));
    append(out, checkExceptionRules(m));
    append(out, checkOutcomes(m));
    append(out, checkModeRules(m));
    sortDiagnostics(out);
    return out;
}

} // namespace ucm
