#include "ucm/analysis.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ucm {

InvocationGraph::InvocationGraph(std::vector<std::string> nodes, std::vector<InvocationEdge> edges)
    : nodes_(std::move(nodes))
{
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        index_.emplace(nodes_[i], i);
    out_.resize(nodes_.size());
    in_.resize(nodes_.size());
    for (auto& e : edges)
    {
        auto from = index_.find(e.caller);
        auto to = index_.find(e.callee);
        if (from == index_.end() || to == index_.end())
            continue;
        out_[from->second].push_back(edges_.size());
        in_[to->second].push_back(edges_.size());
        edges_.push_back(std::move(e));
    }
}

std::vector<std::string> InvocationGraph::roots() const
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (in_[i].empty())
            out.push_back(nodes_[i]);
    return out;
}

std::vector<const InvocationEdge*> InvocationGraph::outgoing(const std::string& name) const
{
    std::vector<const InvocationEdge*> out;
    if (auto it = index_.find(name); it != index_.end())
        for (auto e : out_[it->second])
            out.push_back(&edges_[e]);
    return out;
}

std::vector<const InvocationEdge*> InvocationGraph::incoming(const std::string& name) const
{
    std::vector<const InvocationEdge*> out;
    if (auto it = index_.find(name); it != index_.end())
        for (auto e : in_[it->second])
            out.push_back(&edges_[e]);
    return out;
}

InvocationGraph buildInvocationGraph(const ResolvedModel& m)
{
    std::vector<std::string> nodes;
    std::vector<InvocationEdge> edges;
    for (const auto& uc : m.ast().useCases)
    {
        if (uc.isHandler)
            continue;
        nodes.push_back(uc.name);
        forEachStep(uc, [&](const Step& s) {
            if (const auto* inv = s.as<Invocation>())
                edges.push_back({uc.name, inv->target.text, s.label.label.str(), s.span});
        });
    }
    return {std::move(nodes), std::move(edges)};
}

std::string PathRecord::str() const
{
    std::string out;
    for (const auto& n : useCases)
        out += (out.empty() ? "" : " -> ") + n;
    return out;
}

Diagnostics findInvocationCycle(const InvocationGraph& g)
{
    enum class Color { White, Grey, Black };
    std::map<std::string, Color> color;
    std::vector<const InvocationEdge*> stack;
    Diagnostics out;

    std::function<bool(const std::string&)> visit = [&](const std::string& n) {
        color[n] = Color::Grey;
        for (const InvocationEdge* e : g.outgoing(n))
        {
            stack.push_back(e);
            if (color[e->callee] == Color::Grey)
            {
                auto first = std::find_if(stack.begin(), stack.end(),
                                          [&](const InvocationEdge* s) { return s->caller == e->callee; });
                std::string witness = e->callee;
                for (auto it = first; it != stack.end(); ++it)
                    witness += " -> " + (*it)->callee;
                Diagnostic d = makeDiagnostic(DiagCode::E015, "invocation cycle: " + witness, e->span);
                for (auto it = first; it != stack.end(); ++it)
                    d.related.push_back({(*it)->span, "'" + (*it)->caller + "' invokes '" + (*it)->callee +
                                                          "' at step " + (*it)->atStep});
                out.push_back(std::move(d));
                return true;
            }
            if (color[e->callee] == Color::White && visit(e->callee))
                return true;
            stack.pop_back();
        }
        color[n] = Color::Black;
        return false;
    };

    for (const auto& n : g.nodes())
        if (color[n] == Color::White && visit(n))
            break;
    return out;
}

Checked<std::vector<PathRecord>> enumeratePaths(const InvocationGraph& g, const std::string& target)
{
    Checked<std::vector<PathRecord>> result;
    result.diagnostics = findInvocationCycle(g);
    if (!result.ok() || !g.hasNode(target))
        return result;

    // The graph is acyclic, so every root-to-node walk is simple.
    std::map<std::string, std::vector<std::vector<std::string>>> memo;
    std::function<const std::vector<std::vector<std::string>>&(const std::string&)> toNode =
        [&](const std::string& n) -> const std::vector<std::vector<std::string>>& {
        if (auto it = memo.find(n); it != memo.end())
            return it->second;
        std::vector<std::vector<std::string>> paths;
        auto in = g.incoming(n);
        if (in.empty())
            paths.push_back({n});
        for (const InvocationEdge* e : in)
            for (auto p : toNode(e->caller))
            {
                p.push_back(n);
                paths.push_back(std::move(p));
            }
        return memo[n] = std::move(paths);
    };

    for (const auto& p : toNode(target))
        result.value.push_back({p});
    std::sort(result.value.begin(), result.value.end());
    return result;
}

Checked<std::vector<PathRecord>> enumeratePathsBetween(const InvocationGraph& g, const std::string& from,
                                                       const std::string& to)
{
    Checked<std::vector<PathRecord>> result;
    result.diagnostics = findInvocationCycle(g);
    if (!result.ok() || !g.hasNode(from) || !g.hasNode(to))
        return result;

    std::vector<std::string> current{from};
    std::function<void(const std::string&)> walk = [&](const std::string& n) {
        if (n == to)
        {
            result.value.push_back({current});
            return;
        }
        for (const InvocationEdge* e : g.outgoing(n))
        {
            current.push_back(e->callee);
            walk(e->callee);
            current.pop_back();
        }
    };
    walk(from);
    std::sort(result.value.begin(), result.value.end());
    return result;
}

namespace {

template <typename T> void pushUnique(std::vector<T>& v, const T& x)
{
    if (std::find(v.begin(), v.end(), x) == v.end())
        v.push_back(x);
}

struct Occurrence
{
    const UseCaseAst* useCase;
    const ExceptionDef* exception;
    const ExtensionBlock* block;            // raising block, null for a raise outside any block
    const std::vector<Step>* enclosingSteps; // sequence the block is anchored in
};

std::vector<Occurrence> collectOccurrences(const ResolvedModel& m)
{
    std::vector<Occurrence> out;
    for (const auto& uc : m.ast().useCases)
    {
        auto addFrom = [&](const std::vector<Step>& steps, const ExtensionBlock* block,
                           const std::vector<Step>* enclosing) {
            for (const auto& s : steps)
                if (const auto* r = s.as<Raise>())
                    if (const ExceptionDef* def = m.boundException(r->exception))
                        out.push_back({&uc, def, block, enclosing});
        };
        if (uc.main)
            addFrom(uc.main->steps, nullptr, nullptr);
        forEachBlock(uc, [&](const ExtensionBlock& b, const std::vector<Step>& parent) {
            addFrom(b.steps, &b, &parent);
        });
    }
    return out;
}

bool isAnchoredAt(const StepLabel& step, const StepLabel& anchor)
{
    if (anchor.anchorEnd && anchor.suffix.empty())
        return step.suffix.empty() && !step.anchorEnd && step.anchor >= anchor.anchor &&
               step.anchor <= *anchor.anchorEnd;
    return step == anchor;
}

void addParticipants(const Occurrence& occ, std::vector<std::string>& actors)
{
    if (!occ.block)
        return;
    auto addStep = [&](const Step& s) {
        if (const auto* i = s.as<Interaction>())
            for (const Name* n : {&i->source, &i->target})
                if (n->text != kSystemEndpoint)
                    pushUnique(actors, n->text);
    };
    const StepLabel anchor = occ.block->anchor();
    for (const auto& s : *occ.enclosingSteps)
        if (isAnchoredAt(s.label.label, anchor))
            addStep(s);
    for (const auto& s : occ.block->steps)
        addStep(s);
}

std::vector<std::string> handlersOf(const ResolvedModel& m, const ExceptionDef* def)
{
    std::vector<std::string> out;
    for (const auto& uc : m.ast().useCases)
        for (const auto& ctx : uc.contexts)
            if (m.boundException(ctx.exception) == def)
                pushUnique(out, uc.name);
    return out;
}

/// Paths from the viewed use case `from` to the occurrence's use case `to`.
Checked<std::vector<PathRecord>> routes(const ResolvedModel& m, const InvocationGraph& g, const std::string& from,
                                        const std::string& to)
{
    if (from == to)
        return {{PathRecord{{from}}}, {}};
    const UseCaseAst* viewed = m.useCase(from);
    if (!viewed || !viewed->isHandler)
        return enumeratePathsBetween(g, from, to);

    // A handler is not a graph node: enter the graph through its invocations.
    Checked<std::vector<PathRecord>> result;
    forEachStep(*viewed, [&](const Step& s) {
        const auto* inv = s.as<Invocation>();
        if (!inv || !result.ok())
            return;
        auto sub = enumeratePathsBetween(g, inv->target.text, to);
        result.diagnostics.insert(result.diagnostics.end(), sub.diagnostics.begin(), sub.diagnostics.end());
        for (auto& p : sub.value)
        {
            p.useCases.insert(p.useCases.begin(), from);
            result.value.push_back(std::move(p));
        }
    });
    std::sort(result.value.begin(), result.value.end());
    return result;
}

} // namespace

Checked<std::vector<ExceptionSummaryRow>> exceptionSummary(const ResolvedModel& m, const ExceptionView& view)
{
    Checked<std::vector<ExceptionSummaryRow>> result;
    const InvocationGraph g = buildInvocationGraph(m);
    const auto occurrences = collectOccurrences(m);
    if (occurrences.empty())
        return result;
    result.diagnostics = findInvocationCycle(g);
    if (!result.ok())
        return result;

    std::set<std::string> scope;
    if (!view.global)
        scope = reachableUseCases(m, view.useCase);

    std::map<const ExceptionDef*, std::size_t> globalRow;
    for (const auto& occ : occurrences)
    {
        if (!view.global && !scope.count(occ.useCase->name))
            continue;
        const std::string situation = occ.block && occ.block->guard ? *occ.block->guard : std::string{};

        if (occ.exception->isGlobal)
        {
            auto [it, inserted] = globalRow.emplace(occ.exception, result.value.size());
            if (inserted)
                result.value.push_back({occ.exception->qualifiedName(), true, std::string(kGlobalSource),
                                        handlersOf(m, occ.exception), situation, {}, {}});
            else if (!situation.empty())
            {
                auto& s = result.value[it->second].situation;
                s += (s.empty() ? "" : "; ") + situation;
            }
            addParticipants(occ, result.value[it->second].participatingActors);
            continue;
        }

        ExceptionSummaryRow row{occ.exception->qualifiedName(), false, occ.useCase->name,
                                handlersOf(m, occ.exception), situation, {}, {}};
        addParticipants(occ, row.participatingActors);
        Checked<std::vector<PathRecord>> paths;
        if (view.global)
            paths = occ.useCase->isHandler ? Checked<std::vector<PathRecord>>{{PathRecord{{occ.useCase->name}}}, {}}
                                           : enumeratePaths(g, occ.useCase->name);
        else
            paths = routes(m, g, view.useCase, occ.useCase->name);
        result.diagnostics.insert(result.diagnostics.end(), paths.diagnostics.begin(), paths.diagnostics.end());
        row.paths = std::move(paths.value);
        result.value.push_back(std::move(row));
    }

    // Global exceptions can interrupt anything, so the global view lists them
    // even when no step raises them.
    if (view.global)
        for (const auto& exc : m.ast().exceptions)
            if (exc.isGlobal && !globalRow.count(&exc))
                result.value.push_back(
                    {exc.qualifiedName(), true, std::string(kGlobalSource), handlersOf(m, &exc), "", {}, {}});
    return result;
}

Checked<std::vector<HandlerSummaryRow>> handlerSummary(const ResolvedModel& m)
{
    Checked<std::vector<HandlerSummaryRow>> result;
    auto global = exceptionSummary(m, ExceptionView::globalView());
    result.diagnostics = global.diagnostics;
    if (!result.ok())
        return result;

    std::set<std::string> ordinaryActors;
    for (const auto& uc : m.ast().useCases)
        if (!uc.isHandler)
            for (const ActorRef* a : uc.allActors())
                ordinaryActors.insert(a->name);

    for (const auto& uc : m.ast().useCases)
    {
        if (!uc.isHandler)
            continue;
        HandlerSummaryRow row;
        row.handler = uc.name;
        for (const auto& ctx : uc.contexts)
        {
            pushUnique(row.dependentUseCases, ctx.useCase.text);
            const ExceptionDef* def = m.boundException(ctx.exception);
            pushUnique(row.handledExceptions, def ? def->qualifiedName() : ctx.exception.qualifiedName());
        }
        for (const ActorRef* a : uc.allActors())
            pushUnique(row.actors, ordinaryActors.count(a->name) ? a->name : a->name + "*");
        for (const auto& r : global.value)
            if (std::find(row.handledExceptions.begin(), row.handledExceptions.end(), r.exception) !=
                row.handledExceptions.end())
                row.totalInvocationPaths += r.paths.size();
        result.value.push_back(std::move(row));
    }
    return result;
}

namespace {

/// Mode a handler starts in: the mode its triggering exception's raising
/// block switched to, else the default mode.
std::string handlerEntryMode(const ResolvedModel& m, const UseCaseAst& handler, const std::string& fallback)
{
    for (const auto& ctx : handler.contexts)
    {
        const ExceptionDef* def = m.boundException(ctx.exception);
        if (!def)
            continue;
        for (const auto& uc : m.ast().useCases)
        {
            std::optional<std::string> found;
            forEachBlock(uc, [&](const ExtensionBlock& b, const std::vector<Step>&) {
                if (found || b.kind != BlockKind::Exceptional || (!b.entrySwitch && !b.exitSwitch))
                    return;
                const bool raises = std::any_of(b.steps.begin(), b.steps.end(), [&](const Step& s) {
                    const auto* r = s.as<Raise>();
                    return r && m.boundException(r->exception) == def;
                });
                if (raises)
                    found = (b.exitSwitch ? b.exitSwitch : b.entrySwitch)->mode.text;
            });
            if (found)
                return *found;
        }
    }
    return fallback;
}

void addSwitch(std::vector<ModeSwitchRow>& rows, const std::string& uc, const std::string& location,
               std::string& current, const std::optional<ModeSwitch>& sw)
{
    if (!sw)
        return;
    if (sw->mode.text != current)
        rows.push_back({uc, location, current, sw->mode.text});
    current = sw->mode.text;
}

void blockSwitches(std::vector<ModeSwitchRow>& rows, const std::string& uc, const ExtensionBlock& b,
                   std::string mode)
{
    const std::string label = b.label.label.str();
    addSwitch(rows, uc, label + "-begin", mode, b.entrySwitch);
    for (const auto& nested : b.blocks)
        blockSwitches(rows, uc, nested, mode);
    addSwitch(rows, uc, label + "-end", mode, b.exitSwitch);
}

} // namespace

std::vector<ModeSwitchRow> modeSwitchTable(const ResolvedModel& m)
{
    std::vector<ModeSwitchRow> rows;
    const ModeDecl* def = m.ast().defaultMode();
    const std::string defaultMode = def ? def->name : std::string{};

    for (const auto& uc : m.ast().useCases)
    {
        std::string mode = uc.isHandler ? handlerEntryMode(m, uc, defaultMode) : defaultMode;
        if (uc.main)
        {
            addSwitch(rows, uc.name, "main-begin", mode, uc.main->entrySwitch);
            const std::string afterEntry = mode;
            addSwitch(rows, uc.name, "main-end", mode, uc.main->exitSwitch);
            mode = afterEntry;
        }
        for (const auto& b : uc.extensions)
            blockSwitches(rows, uc.name, b, mode);
    }
    return rows;
}

std::vector<ModeServiceRow> modeServiceTable(const ResolvedModel& m)
{
    std::vector<ModeServiceRow> rows;
    for (const auto& mode : m.ast().modes)
    {
        ModeServiceRow row{mode.name, mode.kind, {}};
        for (const auto& s : mode.offeredServices)
            row.services.push_back(s.text);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace ucm
