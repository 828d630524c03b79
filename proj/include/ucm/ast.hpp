// Abstract syntax tree for UCM4IoT models.
//
// Every node carries the span it was parsed from. Nodes imported from JSON
// carry zero-length spans. Structural equality is the defaulted operator==
// applied to trees passed through withoutSpans().
#pragma once

#include "ucm/source.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ucm {

enum class ModeKind { Normal, Degraded, Restricted, Emergency };
enum class ExceptionCategory { Hardware, Software, Network, Environment };
enum class ActorCategory { Human, Software, PhysicalEntity, Device, Sensor, Actuator, Tag, Reader };
enum class UseCaseLevel { Summary, UserGoal, SubFunction };
enum class ActorRole { Primary, Secondary, Facilitator };
enum class ContextRelation { InterruptContinue, InterruptFail };
enum class TimeUnit { Milliseconds, Seconds, Minutes };
enum class OutcomeKind { Success, Failure, Degraded, Abandoned, Continue };
enum class BlockKind { Alternative, Exceptional };
enum class StepKind { Interaction, Invocation, Condition, Internal, ControlFlow, ExceptionRaise };

// Keyword spellings as they appear in .ucm sources.
std::string_view toString(ModeKind v);
std::string_view toString(ExceptionCategory v); // "HardwareException", ...
std::string_view toString(ActorCategory v);     // "Human", "PhysicalEntity", ...
std::string_view toString(UseCaseLevel v);      // "summary", "user-goal", ...
std::string_view toString(ActorRole v);
std::string_view toString(ContextRelation v);   // "interrupt-continue", ...
std::string_view toString(TimeUnit v);
std::string_view toString(OutcomeKind v);
std::string_view toString(BlockKind v);
std::string_view toString(StepKind v);

std::optional<ModeKind> modeKindFromString(std::string_view s);
std::optional<ExceptionCategory> exceptionCategoryFromString(std::string_view s);
std::optional<ActorCategory> actorCategoryFromString(std::string_view s);
std::optional<UseCaseLevel> levelFromString(std::string_view s);
std::optional<ActorRole> actorRoleFromString(std::string_view s);
std::optional<ContextRelation> relationFromString(std::string_view s);
std::optional<TimeUnit> timeUnitFromString(std::string_view s);
std::optional<OutcomeKind> outcomeKindFromString(std::string_view s);
std::optional<BlockKind> blockKindFromString(std::string_view s);

/// Lower-case category word used in tables and XMI ("hardware", "physical-entity").
std::string_view categoryWord(ExceptionCategory v);
std::string_view categoryWord(ActorCategory v);

/// Sensor, actuator, tag and reader are leaf devices.
bool isDeviceCategory(ActorCategory c);

inline constexpr std::string_view kSystemEndpoint = "System";

/// An identifier occurrence that refers to something declared elsewhere.
struct Name
{
    std::string text;
    SourceSpan span;

    bool operator==(const Name&) const = default;
};

/// Cockburn-style step label: `3`, `2-6a`, `2a1`, `2a1b2`.
struct StepLabel
{
    struct Part
    {
        char letter = 'a';
        std::optional<int> number;

        bool operator==(const Part&) const = default;
    };

    int anchor = 1;
    std::optional<int> anchorEnd; // set for range labels `2-6...`
    std::vector<Part> suffix;

    static std::optional<StepLabel> parse(std::string_view text);
    [[nodiscard]] std::string str() const;

    /// True when the label ends in a letter (an extension block label).
    [[nodiscard]] bool isBlockLabel() const { return !suffix.empty() && !suffix.back().number; }
    /// The label with its trailing integer or letter removed.
    [[nodiscard]] std::optional<StepLabel> parent() const;
    /// Final integer component (the anchor for plain main-step labels).
    [[nodiscard]] int finalNumber() const;
    /// Label `blockLabel + n`.
    [[nodiscard]] StepLabel child(int n) const;

    bool operator==(const StepLabel&) const = default;
};

struct LabelRef
{
    StepLabel label;
    SourceSpan span;

    bool operator==(const LabelRef&) const = default;
};

struct ExceptionRef
{
    std::string categoryText; // as written; empty when the reference is untyped
    std::optional<ExceptionCategory> category;
    std::string name;
    SourceSpan span;

    [[nodiscard]] std::string qualifiedName() const;
    bool operator==(const ExceptionRef&) const = default;
};

struct ModeDecl
{
    std::string name;
    ModeKind kind = ModeKind::Normal;
    bool isDefault = false;
    std::vector<Name> offeredServices;
    SourceSpan span;

    bool operator==(const ModeDecl&) const = default;
};

struct ExceptionDef
{
    std::string categoryText;
    std::optional<ExceptionCategory> category;
    std::string name;
    bool isGlobal = false;
    SourceSpan span;

    [[nodiscard]] std::string qualifiedName() const;
    bool operator==(const ExceptionDef&) const = default;
};

struct ServiceDecl
{
    std::string name;
    std::vector<Name> goals;
    SourceSpan span;

    bool operator==(const ServiceDecl&) const = default;
};

struct Multiplicity
{
    long long lower = 0;
    std::optional<long long> upper; // nullopt: unbounded `*`
    SourceSpan span;

    bool operator==(const Multiplicity&) const = default;
};

struct ActorRef
{
    std::string categoryText; // empty when the actor was written without a type
    std::optional<ActorCategory> category;
    std::string name;
    std::optional<Multiplicity> multiplicity;
    SourceSpan span;

    [[nodiscard]] std::string qualifiedName() const;
    bool operator==(const ActorRef&) const = default;
};

struct HandlerContext
{
    Name useCase;
    ExceptionRef exception;
    ContextRelation relation = ContextRelation::InterruptContinue;
    SourceSpan span;

    bool operator==(const HandlerContext&) const = default;
};

struct Interaction
{
    Name source;
    Name target;
    std::string message;

    bool operator==(const Interaction&) const = default;
};

struct Invocation
{
    Name target;
    bool operator==(const Invocation&) const = default;
};

struct Condition
{
    std::string text;
    bool operator==(const Condition&) const = default;
};

struct Timeout
{
    double amount = 0;
    TimeUnit unit = TimeUnit::Seconds;
    bool operator==(const Timeout&) const = default;
};

struct Internal
{
    std::string description;
    std::optional<Timeout> timeout;
    bool operator==(const Internal&) const = default;
};

struct Goto
{
    LabelRef target;
    bool operator==(const Goto&) const = default;
};

struct Repeat
{
    LabelRef first;
    LabelRef last;
    bool operator==(const Repeat&) const = default;
};

struct Raise
{
    ExceptionRef exception;
    bool operator==(const Raise&) const = default;
};

using StepPayload = std::variant<Interaction, Invocation, Condition, Internal, Goto, Repeat, Raise>;

struct Step
{
    LabelRef label;
    StepPayload payload;
    SourceSpan span;

    [[nodiscard]] StepKind kind() const;
    template <typename T> [[nodiscard]] const T* as() const { return std::get_if<T>(&payload); }

    bool operator==(const Step&) const = default;
};

struct ModeSwitch
{
    Name mode;
    SourceSpan span;
    bool operator==(const ModeSwitch&) const = default;
};

struct Outcome
{
    OutcomeKind kind = OutcomeKind::Success;
    std::optional<LabelRef> continueTarget;
    SourceSpan span;

    bool operator==(const Outcome&) const = default;
};

struct Scenario
{
    std::optional<ModeSwitch> entrySwitch;
    std::vector<Step> steps;
    std::optional<ModeSwitch> exitSwitch;
    std::optional<Outcome> outcome; // always set by the parser; may be absent in imported JSON
    SourceSpan span;

    bool operator==(const Scenario&) const = default;
};

struct ExtensionBlock
{
    LabelRef label;
    BlockKind kind = BlockKind::Alternative;
    std::optional<std::string> guard;
    std::optional<ModeSwitch> entrySwitch;
    std::vector<Step> steps;
    std::vector<ExtensionBlock> blocks;
    std::optional<ModeSwitch> exitSwitch;
    std::optional<Outcome> outcome;
    SourceSpan span;

    /// Anchor step label (or range) in the enclosing sequence.
    [[nodiscard]] StepLabel anchor() const { return label.label.parent().value_or(label.label); }

    bool operator==(const ExtensionBlock&) const = default;
};

struct UseCaseAst
{
    std::string name;
    SourceSpan nameSpan;
    bool isHandler = false;
    std::optional<std::string> scope;
    std::optional<UseCaseLevel> level;
    std::optional<std::string> intention;
    std::optional<std::string> multiplicity;
    std::vector<ActorRef> primaryActors;
    std::vector<ActorRef> secondaryActors;
    std::vector<ActorRef> facilitatorActors;
    std::optional<std::string> precondition;
    std::optional<std::string> postcondition;
    std::vector<HandlerContext> contexts;
    std::optional<Scenario> main;
    std::vector<ExtensionBlock> extensions;
    SourceSpan span;

    /// Primary, secondary and facilitator actors in that order.
    [[nodiscard]] std::vector<const ActorRef*> allActors() const;

    bool operator==(const UseCaseAst&) const = default;
};

struct AstModel
{
    std::string name;
    std::vector<ModeDecl> modes;
    std::vector<ExceptionDef> exceptions;
    std::vector<ServiceDecl> services;
    std::vector<UseCaseAst> useCases;
    SourceSpan span;

    [[nodiscard]] const ModeDecl* defaultMode() const;

    bool operator==(const AstModel&) const = default;
};

/// Copy of `model` with every span reset to an empty, file-less span.
AstModel withoutSpans(AstModel model);

/// Calls `fn(step)` for every step of a use case, main scenario first, then
/// extension blocks depth-first in source order.
template <typename Fn> void forEachStep(const UseCaseAst& uc, Fn&& fn);

/// Calls `fn(block, enclosingSequenceSteps)` for every extension block,
/// depth-first in source order.
template <typename Fn> void forEachBlock(const UseCaseAst& uc, Fn&& fn);

namespace detail {

template <typename Fn> void visitBlockSteps(const ExtensionBlock& block, Fn& fn)
{
    for (const auto& step : block.steps)
        fn(step);
    for (const auto& nested : block.blocks)
        visitBlockSteps(nested, fn);
}

template <typename Fn>
void visitBlocks(const ExtensionBlock& block, const std::vector<Step>& parentSteps, Fn& fn)
{
    fn(block, parentSteps);
    for (const auto& nested : block.blocks)
        visitBlocks(nested, block.steps, fn);
}

} // namespace detail

template <typename Fn> void forEachStep(const UseCaseAst& uc, Fn&& fn)
{
    if (uc.main)
        for (const auto& step : uc.main->steps)
            fn(step);
    for (const auto& block : uc.extensions)
        detail::visitBlockSteps(block, fn);
}

template <typename Fn> void forEachBlock(const UseCaseAst& uc, Fn&& fn)
{
    static const std::vector<Step> kNoSteps;
    const auto& mainSteps = uc.main ? uc.main->steps : kNoSteps;
    for (const auto& block : uc.extensions)
        detail::visitBlocks(block, mainSteps, fn);
}

} // namespace ucm
