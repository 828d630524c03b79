// Invocation graph, path enumeration and the generated summary tables.
#pragma once

#include "ucm/ast.hpp"
#include "ucm/diagnostic.hpp"
#include "ucm/model.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace ucm {

/// Result of an analysis that can fail with diagnostics (E015).
template <typename T> struct Checked
{
    T value{};
    Diagnostics diagnostics;

    [[nodiscard]] bool ok() const { return !hasErrors(diagnostics); }
};

struct InvocationEdge
{
    std::string caller;
    std::string callee;
    std::string atStep; // label of the invoke step
    SourceSpan span;

    bool operator==(const InvocationEdge&) const = default;
};

/// Directed multigraph of invocations between non-handler use cases.
class InvocationGraph
{
public:
    InvocationGraph() = default;
    /// Edges whose endpoints are not in `nodes` are dropped.
    InvocationGraph(std::vector<std::string> nodes, std::vector<InvocationEdge> edges);

    [[nodiscard]] const std::vector<std::string>& nodes() const { return nodes_; }
    [[nodiscard]] const std::vector<InvocationEdge>& edges() const { return edges_; }
    /// Nodes without incoming edges, in node order.
    [[nodiscard]] std::vector<std::string> roots() const;
    [[nodiscard]] bool hasNode(const std::string& name) const { return index_.count(name) != 0; }
    [[nodiscard]] std::vector<const InvocationEdge*> outgoing(const std::string& name) const;
    [[nodiscard]] std::vector<const InvocationEdge*> incoming(const std::string& name) const;

private:
    std::vector<std::string> nodes_;
    std::vector<InvocationEdge> edges_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
};

/// One edge per invoke step (inside extension blocks too). Handlers are not
/// nodes, so their invocations and contexts add no edges.
InvocationGraph buildInvocationGraph(const ResolvedModel& m);

struct PathRecord
{
    std::vector<std::string> useCases;

    [[nodiscard]] std::string str() const; // "A -> B -> C"
    bool operator==(const PathRecord&) const = default;
    auto operator<=>(const PathRecord&) const = default;
};

/// E015 with one cycle witness when the graph has a cycle, else empty.
Diagnostics findInvocationCycle(const InvocationGraph& g);

/// All simple root-to-target paths, sorted by name sequence. Parallel edges
/// yield one path each. Fails with E015 on a cyclic graph; an unknown target
/// yields no paths.
Checked<std::vector<PathRecord>> enumeratePaths(const InvocationGraph& g, const std::string& target);

/// All paths from `from` to `to` (sorted). Same failure modes as above.
Checked<std::vector<PathRecord>> enumeratePathsBetween(const InvocationGraph& g, const std::string& from,
                                                       const std::string& to);

inline constexpr std::string_view kGlobalSource = "(global)";

struct ExceptionSummaryRow
{
    std::string exception; // qualified name
    bool isGlobal = false;
    std::string sourceUseCase; // or "(global)"
    std::vector<std::string> handlers;
    std::string situation;
    std::vector<std::string> participatingActors;
    std::vector<PathRecord> paths;
};

struct ExceptionView
{
    bool global = true;
    std::string useCase;

    static ExceptionView globalView() { return {}; }
    static ExceptionView of(std::string name) { return {false, std::move(name)}; }
};

/// Global view: one row per raise occurrence with its root paths, and one
/// "(global)" row per global exception. Use-case view: occurrences reachable
/// from the viewed use case, paths re-rooted there.
Checked<std::vector<ExceptionSummaryRow>> exceptionSummary(const ResolvedModel& m, const ExceptionView& view);

struct HandlerSummaryRow
{
    std::string handler;
    std::vector<std::string> dependentUseCases;
    std::vector<std::string> handledExceptions;
    std::vector<std::string> actors; // exceptional actors carry a trailing '*'
    std::size_t totalInvocationPaths = 0;
};

Checked<std::vector<HandlerSummaryRow>> handlerSummary(const ResolvedModel& m);

struct ModeSwitchRow
{
    std::string useCase;
    std::string location; // main-begin, main-end, <label>-begin, <label>-end
    std::string fromMode;
    std::string toMode;

    bool operator==(const ModeSwitchRow&) const = default;
};

/// One row per mode switch that changes the mode, in source order.
std::vector<ModeSwitchRow> modeSwitchTable(const ResolvedModel& m);

struct ModeServiceRow
{
    std::string mode;
    ModeKind kind = ModeKind::Normal;
    std::vector<std::string> services;
};

std::vector<ModeServiceRow> modeServiceTable(const ResolvedModel& m);

} // namespace ucm
