#include "ucm/model.hpp"

#include <algorithm>
#include <deque>

namespace ucm {

namespace {

const std::set<ActorKey> kNoActors;
const std::set<std::string> kNoLabels;

std::size_t editDistance(const std::string& a, const std::string& b)
{
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j)
        row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i)
    {
        std::size_t diagonal = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j)
        {
            const std::size_t above = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diagonal = above;
        }
    }
    return row[b.size()];
}

/// Names within a small edit distance of `name`, closest first.
template <typename Map> std::vector<std::string> similarNames(const std::string& name, const Map& candidates)
{
    const std::size_t limit = std::max<std::size_t>(1, name.size() / 3);
    std::vector<std::pair<std::size_t, std::string>> scored;
    for (const auto& [candidate, _] : candidates)
        if (const auto d = editDistance(name, candidate); d <= limit)
            scored.emplace_back(d, candidate);
    std::sort(scored.begin(), scored.end());
    std::vector<std::string> out;
    for (auto& [_, n] : scored)
        out.push_back(std::move(n));
    return out;
}

class Resolver
{
public:
    Resolver(Diagnostics& diags, std::map<std::string, const UseCaseAst*>& useCases,
             std::map<std::string, const ExceptionDef*>& byQualified, std::map<std::string, const ExceptionDef*>& byPlain,
             std::map<std::string, const ModeDecl*>& modes, std::map<std::string, const ServiceDecl*>& services,
             std::map<std::string, std::set<ActorKey>>& actors, std::map<std::string, std::set<std::string>>& labels,
             std::vector<Binding>& bindings)
        : diags_(diags), useCases_(useCases), byQualified_(byQualified), byPlain_(byPlain),
          modes_(modes), services_(services), actors_(actors), labels_(labels), bindings_(bindings)
    {
    }

    void run(const AstModel& ast)
    {
        declare(ast);
        for (const auto& mode : ast.modes)
            for (const auto& svc : mode.offeredServices)
                bindService(svc);
        for (const auto& svc : ast.services)
            for (const auto& goal : svc.goals)
                bindUseCase(ReferenceKind::ServiceGoal, goal, "service '" + svc.name + "' provides");
        for (const auto& uc : ast.useCases)
            resolveUseCase(uc);
    }

private:
    void bind(ReferenceKind kind, const void* site, const SourceSpan& span, std::string target)
    {
        bindings_.push_back(Binding{kind, site, span, std::move(target)});
    }

    void duplicate(const std::string& what, const std::string& name, const SourceSpan& at, const SourceSpan& first)
    {
        Diagnostic d = makeDiagnostic(DiagCode::E014, "duplicate " + what + " '" + name + "'", at);
        d.related.push_back(RelatedNote{first, "first defined here"});
        diags_.push_back(std::move(d));
    }

    void declare(const AstModel& ast)
    {
        for (const auto& mode : ast.modes)
        {
            auto [it, inserted] = modes_.emplace(mode.name, &mode);
            if (!inserted)
                duplicate("mode", mode.name, mode.span, it->second->span);
        }
        for (const auto& exc : ast.exceptions)
        {
            auto [it, inserted] = byPlain_.emplace(exc.name, &exc);
            if (!inserted)
            {
                const std::string what = it->second->categoryText == exc.categoryText
                                             ? "exception"
                                             : "exception name (already declared as " + it->second->qualifiedName() + ")";
                duplicate(what, exc.qualifiedName(), exc.span, it->second->span);
                continue;
            }
            byQualified_.emplace(exc.qualifiedName(), &exc);
        }
        for (const auto& svc : ast.services)
        {
            auto [it, inserted] = services_.emplace(svc.name, &svc);
            if (!inserted)
                duplicate("service", svc.name, svc.span, it->second->span);
        }

        std::map<std::string, const ActorRef*> actorByName;
        for (const auto& uc : ast.useCases)
        {
            auto [it, inserted] = useCases_.emplace(uc.name, &uc);
            if (!inserted)
                duplicate(uc.isHandler ? "handler" : "use case", uc.name, uc.nameSpan, it->second->nameSpan);

            auto& declared = actors_[uc.name];
            for (const ActorRef* actor : uc.allActors())
            {
                if (actor->category)
                    declared.emplace(*actor->category, actor->name);
                if (actor->categoryText.empty())
                    continue;
                auto [first, fresh] = actorByName.emplace(actor->name, actor);
                if (!fresh && first->second->categoryText != actor->categoryText)
                    duplicate("actor name (already declared as " + first->second->qualifiedName() + ")",
                              actor->qualifiedName(), actor->span, first->second->span);
            }

            auto& labels = labels_[uc.name];
            forEachStep(uc, [&](const Step& s) { labels.insert(s.label.label.str()); });
        }
    }

    void bindService(const Name& name)
    {
        if (services_.count(name.text))
            bind(ReferenceKind::OfferedService, &name, name.span, name.text);
        else
            diags_.push_back(makeDiagnostic(DiagCode::E013, "mode offers undeclared service '" + name.text + "'",
                                            name.span, serviceNames()));
    }

    std::vector<std::string> serviceNames() const
    {
        std::vector<std::string> out;
        for (const auto& [n, _] : services_)
            out.push_back(n);
        return out;
    }

    void bindUseCase(ReferenceKind kind, const Name& name, const std::string& context)
    {
        if (useCases_.count(name.text))
        {
            bind(kind, &name, name.span, name.text);
            return;
        }
        diags_.push_back(makeDiagnostic(DiagCode::E003, context + " undefined use case '" + name.text + "'", name.span,
                                        similarNames(name.text, useCases_)));
    }

    void bindException(ReferenceKind kind, const ExceptionRef& ref)
    {
        if (ref.categoryText.empty())
        {
            // Untyped reference: bind by plain name; the missing type is E005 in validation.
            if (auto it = byPlain_.find(ref.name); it != byPlain_.end())
            {
                bind(kind, &ref, ref.span, it->second->qualifiedName());
                return;
            }
        }
        else if (auto it = byQualified_.find(ref.qualifiedName()); it != byQualified_.end())
        {
            bind(kind, &ref, ref.span, it->first);
            return;
        }

        std::vector<std::string> suggestions;
        if (auto it = byPlain_.find(ref.name); it != byPlain_.end())
            suggestions.push_back(it->second->qualifiedName());
        else
            suggestions.push_back("declare it in the header: exception " + ref.qualifiedName());
        diags_.push_back(makeDiagnostic(DiagCode::E004,
                                        "exception '" + ref.qualifiedName() + "' is not defined in the header",
                                        ref.span, std::move(suggestions)));
    }

    void bindMode(const ModeSwitch& ms)
    {
        if (modes_.count(ms.mode.text))
        {
            bind(ReferenceKind::ModeSwitchTarget, &ms.mode, ms.mode.span, ms.mode.text);
            return;
        }
        std::vector<std::string> known;
        for (const auto& [n, _] : modes_)
            known.push_back(n);
        diags_.push_back(makeDiagnostic(DiagCode::E013, "mode switch to undeclared mode '" + ms.mode.text + "'",
                                        ms.mode.span, std::move(known)));
    }

    void bindStep(const UseCaseAst& uc, const LabelRef& ref, const std::string& what)
    {
        const auto& labels = labels_[uc.name];
        const std::string text = ref.label.str();
        if (labels.count(text))
        {
            bind(ReferenceKind::StepTarget, &ref, ref.span, uc.name + "#" + text);
            return;
        }
        diags_.push_back(makeDiagnostic(DiagCode::E012,
                                        what + " refers to step '" + text + "', which does not exist in '" + uc.name + "'",
                                        ref.span));
    }

    void bindAnchor(const UseCaseAst& uc, const ExtensionBlock& block, const std::vector<Step>& parentSteps)
    {
        const StepLabel anchor = block.anchor();
        auto exists = [&](const StepLabel& label) {
            return std::any_of(parentSteps.begin(), parentSteps.end(),
                               [&](const Step& s) { return s.label.label == label; });
        };
        bool ok;
        if (anchor.anchorEnd)
        {
            StepLabel first = anchor;
            first.anchorEnd.reset();
            StepLabel last = anchor;
            last.anchor = *anchor.anchorEnd;
            last.anchorEnd.reset();
            ok = exists(first) && exists(last) && anchor.anchor <= *anchor.anchorEnd;
        }
        else
        {
            ok = exists(anchor);
        }
        if (ok)
        {
            bind(ReferenceKind::StepTarget, &block.label, block.label.span, uc.name + "#" + anchor.str());
            return;
        }
        diags_.push_back(makeDiagnostic(DiagCode::E012,
                                        "extension block '" + block.label.label.str() + "' is anchored to step '" +
                                            anchor.str() + "', which does not exist in the enclosing sequence",
                                        block.label.span));
    }

    void resolveSteps(const UseCaseAst& uc, const std::vector<Step>& steps)
    {
        for (const auto& step : steps)
        {
            if (const auto* inv = step.as<Invocation>())
                bindUseCase(ReferenceKind::Invocation, inv->target, "invocation of");
            else if (const auto* raise = step.as<Raise>())
                bindException(ReferenceKind::RaisedException, raise->exception);
            else if (const auto* go = step.as<Goto>())
                bindStep(uc, go->target, "goto");
            else if (const auto* rep = step.as<Repeat>())
            {
                bindStep(uc, rep->first, "repeat");
                bindStep(uc, rep->last, "repeat");
            }
        }
    }

    void resolveScenarioEdges(const UseCaseAst& uc, const std::optional<ModeSwitch>& entry,
                              const std::optional<ModeSwitch>& exit, const std::optional<Outcome>& outcome)
    {
        if (entry)
            bindMode(*entry);
        if (exit)
            bindMode(*exit);
        if (outcome && outcome->continueTarget)
            bindStep(uc, *outcome->continueTarget, "outcome continue");
    }

    void resolveBlock(const UseCaseAst& uc, const ExtensionBlock& block, const std::vector<Step>& parentSteps)
    {
        bindAnchor(uc, block, parentSteps);
        if (block.entrySwitch)
            bindMode(*block.entrySwitch);
        resolveSteps(uc, block.steps);

        std::map<std::string, const ExtensionBlock*> siblings;
        for (const auto& nested : block.blocks)
        {
            auto [it, fresh] = siblings.emplace(nested.label.label.str(), &nested);
            if (!fresh)
                duplicate("extension block", it->first, nested.label.span, it->second->label.span);
            resolveBlock(uc, nested, block.steps);
        }
        if (block.exitSwitch)
            bindMode(*block.exitSwitch);
        if (block.outcome && block.outcome->continueTarget)
            bindStep(uc, *block.outcome->continueTarget, "outcome continue");
    }

    void resolveUseCase(const UseCaseAst& uc)
    {
        for (const auto& ctx : uc.contexts)
        {
            bindUseCase(ReferenceKind::ContextUseCase, ctx.useCase, "handler context names");
            bindException(ReferenceKind::ContextException, ctx.exception);
        }
        static const std::vector<Step> kNoSteps;
        if (uc.main)
        {
            if (uc.main->entrySwitch)
                bindMode(*uc.main->entrySwitch);
            resolveSteps(uc, uc.main->steps);
            resolveScenarioEdges(uc, std::nullopt, uc.main->exitSwitch, uc.main->outcome);
        }
        std::map<std::string, const ExtensionBlock*> siblings;
        for (const auto& block : uc.extensions)
        {
            auto [it, fresh] = siblings.emplace(block.label.label.str(), &block);
            if (!fresh)
                duplicate("extension block", it->first, block.label.span, it->second->label.span);
            resolveBlock(uc, block, uc.main ? uc.main->steps : kNoSteps);
        }
    }

    Diagnostics& diags_;
    std::map<std::string, const UseCaseAst*>& useCases_;
    std::map<std::string, const ExceptionDef*>& byQualified_;
    std::map<std::string, const ExceptionDef*>& byPlain_;
    std::map<std::string, const ModeDecl*>& modes_;
    std::map<std::string, const ServiceDecl*>& services_;
    std::map<std::string, std::set<ActorKey>>& actors_;
    std::map<std::string, std::set<std::string>>& labels_;
    std::vector<Binding>& bindings_;
};

void collectBlockSites(const ExtensionBlock& block, std::vector<std::pair<ReferenceKind, const void*>>& out);

void collectStepSites(const std::vector<Step>& steps, std::vector<std::pair<ReferenceKind, const void*>>& out)
{
    for (const auto& step : steps)
    {
        if (const auto* inv = step.as<Invocation>())
            out.emplace_back(ReferenceKind::Invocation, &inv->target);
        else if (const auto* raise = step.as<Raise>())
            out.emplace_back(ReferenceKind::RaisedException, &raise->exception);
        else if (const auto* go = step.as<Goto>())
            out.emplace_back(ReferenceKind::StepTarget, &go->target);
        else if (const auto* rep = step.as<Repeat>())
        {
            out.emplace_back(ReferenceKind::StepTarget, &rep->first);
            out.emplace_back(ReferenceKind::StepTarget, &rep->last);
        }
    }
}

void collectEdgeSites(const std::optional<ModeSwitch>& entry, const std::optional<ModeSwitch>& exit,
                      const std::optional<Outcome>& outcome, std::vector<std::pair<ReferenceKind, const void*>>& out)
{
    if (entry)
        out.emplace_back(ReferenceKind::ModeSwitchTarget, &entry->mode);
    if (exit)
        out.emplace_back(ReferenceKind::ModeSwitchTarget, &exit->mode);
    if (outcome && outcome->continueTarget)
        out.emplace_back(ReferenceKind::StepTarget, &*outcome->continueTarget);
}

void collectBlockSites(const ExtensionBlock& block, std::vector<std::pair<ReferenceKind, const void*>>& out)
{
    out.emplace_back(ReferenceKind::StepTarget, &block.label);
    collectStepSites(block.steps, out);
    for (const auto& nested : block.blocks)
        collectBlockSites(nested, out);
    collectEdgeSites(block.entrySwitch, block.exitSwitch, block.outcome, out);
}

} // namespace

const UseCaseAst* ResolvedModel::useCase(const std::string& name) const
{
    auto it = useCaseByName_.find(name);
    return it == useCaseByName_.end() ? nullptr : it->second;
}

const ExceptionDef* ResolvedModel::exception(const std::string& qualifiedName) const
{
    auto it = exceptionByQualifiedName_.find(qualifiedName);
    return it == exceptionByQualifiedName_.end() ? nullptr : it->second;
}

const ExceptionDef* ResolvedModel::exceptionByPlainName(const std::string& name) const
{
    auto it = exceptionByPlainName_.find(name);
    return it == exceptionByPlainName_.end() ? nullptr : it->second;
}

const ModeDecl* ResolvedModel::mode(const std::string& name) const
{
    auto it = modeByName_.find(name);
    return it == modeByName_.end() ? nullptr : it->second;
}

const ServiceDecl* ResolvedModel::service(const std::string& name) const
{
    auto it = serviceByName_.find(name);
    return it == serviceByName_.end() ? nullptr : it->second;
}

const ExceptionDef* ResolvedModel::boundException(const ExceptionRef& ref) const
{
    const Binding* b = bindingFor(&ref);
    return b ? exception(b->target) : nullptr;
}

const Binding* ResolvedModel::bindingFor(const void* site) const
{
    auto it = bindingIndex_.find(site);
    return it == bindingIndex_.end() ? nullptr : &bindings_[it->second];
}

const std::set<ActorKey>& ResolvedModel::declaredActors(const std::string& useCase) const
{
    auto it = declaredActors_.find(useCase);
    return it == declaredActors_.end() ? kNoActors : it->second;
}

const std::set<std::string>& ResolvedModel::stepLabels(const std::string& useCase) const
{
    auto it = stepLabels_.find(useCase);
    return it == stepLabels_.end() ? kNoLabels : it->second;
}

std::pair<ResolvedModel, Diagnostics> resolve(AstModel ast)
{
    ResolvedModel model;
    auto owned = std::make_shared<AstModel>(std::move(ast));
    model.ast_ = owned;
    Diagnostics diags;

    Resolver resolver(diags, model.useCaseByName_, model.exceptionByQualifiedName_,
                      model.exceptionByPlainName_, model.modeByName_, model.serviceByName_, model.declaredActors_,
                      model.stepLabels_, model.bindings_);
    resolver.run(*owned);

    for (std::size_t i = 0; i < model.bindings_.size(); ++i)
        model.bindingIndex_.emplace(model.bindings_[i].site, i);
    sortDiagnostics(diags);
    return {std::move(model), std::move(diags)};
}

std::set<std::string> reachableUseCases(const ResolvedModel& m, const std::string& root)
{
    std::set<std::string> visited;
    if (!m.useCase(root))
        return visited;
    std::deque<std::string> queue{root};
    visited.insert(root);
    while (!queue.empty())
    {
        const UseCaseAst* uc = m.useCase(queue.front());
        queue.pop_front();
        forEachStep(*uc, [&](const Step& step) {
            const auto* inv = step.as<Invocation>();
            if (!inv || !m.useCase(inv->target.text))
                return;
            if (visited.insert(inv->target.text).second)
                queue.push_back(inv->target.text);
        });
    }
    return visited;
}

std::vector<std::pair<ReferenceKind, const void*>> referenceSites(const AstModel& ast)
{
    std::vector<std::pair<ReferenceKind, const void*>> out;
    for (const auto& mode : ast.modes)
        for (const auto& svc : mode.offeredServices)
            out.emplace_back(ReferenceKind::OfferedService, &svc);
    for (const auto& svc : ast.services)
        for (const auto& goal : svc.goals)
            out.emplace_back(ReferenceKind::ServiceGoal, &goal);
    for (const auto& uc : ast.useCases)
    {
        for (const auto& ctx : uc.contexts)
        {
            out.emplace_back(ReferenceKind::ContextUseCase, &ctx.useCase);
            out.emplace_back(ReferenceKind::ContextException, &ctx.exception);
        }
        if (uc.main)
        {
            collectStepSites(uc.main->steps, out);
            collectEdgeSites(uc.main->entrySwitch, uc.main->exitSwitch, uc.main->outcome, out);
        }
        for (const auto& block : uc.extensions)
            collectBlockSites(block, out);
    }
    return out;
}

} // namespace ucm
