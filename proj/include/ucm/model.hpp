// Name resolution: symbol tables and reference bindings over an AstModel.
#pragma once

#include "ucm/ast.hpp"
#include "ucm/diagnostic.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ucm {

enum class ReferenceKind
{
    Invocation,       // invoke step -> use case
    ServiceGoal,      // service provides -> use case
    ContextUseCase,   // handler context -> use case
    RaisedException,  // raise step -> exception definition
    ContextException, // handler context -> exception definition
    ModeSwitchTarget, // mode switch -> mode
    OfferedService,   // mode offers -> service
    StepTarget,       // goto / repeat / continue / block anchor -> step
};

/// A reference site in the AST (identified by node address, stable for the
/// lifetime of the owning ResolvedModel) and the definition it binds to.
struct Binding
{
    ReferenceKind kind;
    const void* site;
    SourceSpan siteSpan;
    std::string target; // name of the bound definition
};

using ActorKey = std::pair<ActorCategory, std::string>;

/// An AST plus the lookups and bindings computed by resolve(). Immutable;
/// copies share the underlying AST so binding sites stay valid.
class ResolvedModel
{
public:
    ResolvedModel() = default;

    [[nodiscard]] const AstModel& ast() const { return *ast_; }

    [[nodiscard]] const UseCaseAst* useCase(const std::string& name) const;
    [[nodiscard]] const ExceptionDef* exception(const std::string& qualifiedName) const;
    [[nodiscard]] const ExceptionDef* exceptionByPlainName(const std::string& name) const;
    [[nodiscard]] const ModeDecl* mode(const std::string& name) const;
    [[nodiscard]] const ServiceDecl* service(const std::string& name) const;

    /// Exception definition a reference was bound to (by qualified name, or
    /// by plain name for untyped references), if any.
    [[nodiscard]] const ExceptionDef* boundException(const ExceptionRef& ref) const;

    [[nodiscard]] const std::vector<Binding>& bindings() const { return bindings_; }
    [[nodiscard]] const Binding* bindingFor(const void* site) const;

    /// Typed actors declared by a use case.
    [[nodiscard]] const std::set<ActorKey>& declaredActors(const std::string& useCase) const;

    /// All step labels in a use case (main and every block, as strings).
    [[nodiscard]] const std::set<std::string>& stepLabels(const std::string& useCase) const;

private:
    friend std::pair<ResolvedModel, Diagnostics> resolve(AstModel ast);

    std::shared_ptr<const AstModel> ast_ = std::make_shared<AstModel>();
    std::map<std::string, const UseCaseAst*> useCaseByName_;
    std::map<std::string, const ExceptionDef*> exceptionByQualifiedName_;
    std::map<std::string, const ExceptionDef*> exceptionByPlainName_;
    std::map<std::string, const ModeDecl*> modeByName_;
    std::map<std::string, const ServiceDecl*> serviceByName_;
    std::map<std::string, std::set<ActorKey>> declaredActors_;
    std::map<std::string, std::set<std::string>> stepLabels_;
    std::vector<Binding> bindings_;
    std::map<const void*, std::size_t> bindingIndex_;
};

/// Builds symbol tables and binds every reference. Never aborts; each
/// unresolvable reference yields one diagnostic (E003, E004, E012, E013),
/// and redefinitions yield E014. The first definition of a duplicated name
/// wins.
std::pair<ResolvedModel, Diagnostics> resolve(AstModel ast);

/// Every use case reachable from `root` through invoke steps (including
/// invocations inside extension blocks), including `root` itself. Empty when
/// `root` is not a use case.
std::set<std::string> reachableUseCases(const ResolvedModel& m, const std::string& root);

/// Reference sites resolve() is expected to bind: invocations, raised and
/// context exceptions, context use cases, mode switches, offered services,
/// service goals, and step references.
std::vector<std::pair<ReferenceKind, const void*>> referenceSites(const AstModel& ast);

} // namespace ucm
