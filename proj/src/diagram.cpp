#include "ucm/export.hpp"

#include <set>
#include <sstream>

namespace ucm {

namespace {

std::string xmlEscape(std::string_view text)
{
    std::string out;
    for (char c : text)
    {
        switch (c)
        {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        case '\n': out += "&#10;"; break;
        case '\t': out += "&#9;"; break;
        default: out += c;
        }
    }
    return out;
}

/// Builds `<tag a="v" ...>` element text with escaped attribute values.
class Element
{
public:
    explicit Element(std::string tag) : tag_(std::move(tag)) {}

    Element& attr(const std::string& name, std::string_view value)
    {
        attrs_ += " " + name + "=\"" + xmlEscape(value) + "\"";
        return *this;
    }
    Element& optAttr(const std::string& name, const std::optional<std::string>& value)
    {
        return value ? attr(name, std::string_view(*value)) : *this;
    }

    [[nodiscard]] std::string open() const { return "<" + tag_ + attrs_ + ">"; }
    [[nodiscard]] std::string empty() const { return "<" + tag_ + attrs_ + "/>"; }
    [[nodiscard]] std::string close() const { return "</" + tag_ + ">"; }

private:
    std::string tag_;
    std::string attrs_;
};

std::string exceptionId(const ResolvedModel& m, const ExceptionRef& ref)
{
    const ExceptionDef* def = m.boundException(ref);
    const std::string category = def ? def->categoryText : ref.categoryText;
    return "exc." + (category.empty() ? std::string("_") : category) + "." + ref.name;
}

std::string actorId(const ActorRef& a)
{
    return "actor." + (a.categoryText.empty() ? std::string("_") : a.categoryText) + "." + a.name;
}

class XmiWriter
{
public:
    explicit XmiWriter(const ResolvedModel& m) : m_(m) {}

    std::string write()
    {
        line(0, R"(<?xml version="1.0" encoding="UTF-8"?>)");
        line(0, R"(<xmi:XMI xmi:version="2.0" xmlns:xmi="http://www.omg.org/XMI" xmlns:ucm="http://ucm4iot/1.0">)");
        const auto& ast = m_.ast();
        Element model("ucm:Model");
        model.attr("xmi:id", "model").attr("name", ast.name);
        line(1, model.open());

        for (const auto& mode : ast.modes)
        {
            std::string offers;
            for (const auto& s : mode.offeredServices)
                offers += (offers.empty() ? "" : " ") + ("svc." + s.text);
            Element e("ucm:Mode");
            e.attr("xmi:id", "mode." + mode.name)
                .attr("name", mode.name)
                .attr("kind", toString(mode.kind))
                .attr("default", mode.isDefault ? "true" : "false")
                .attr("offers", offers);
            line(2, e.empty());
        }
        for (const auto& svc : ast.services)
        {
            std::string goals;
            for (const auto& g : svc.goals)
                goals += (goals.empty() ? "" : " ") + ("uc." + g.text);
            Element e("ucm:Service");
            e.attr("xmi:id", "svc." + svc.name).attr("name", svc.name).attr("provides", goals);
            line(2, e.empty());
        }
        for (const auto& exc : ast.exceptions)
        {
            Element e("ucm:Exception");
            e.attr("xmi:id", "exc." + (exc.categoryText.empty() ? std::string("_") : exc.categoryText) + "." +
                                 exc.name)
                .attr("name", exc.name)
                .attr("category", exc.category ? categoryWord(*exc.category) : std::string_view(exc.categoryText))
                .attr("global", exc.isGlobal ? "true" : "false");
            line(2, e.empty());
        }

        std::set<std::string> seenActors;
        for (const auto& uc : ast.useCases)
            for (const ActorRef* a : uc.allActors())
                if (seenActors.insert(actorId(*a)).second)
                {
                    Element e("ucm:Actor");
                    e.attr("xmi:id", actorId(*a))
                        .attr("name", a->name)
                        .attr("category", a->category ? categoryWord(*a->category) : std::string_view(a->categoryText));
                    line(2, e.empty());
                }

        for (const auto& uc : ast.useCases)
            useCase(uc);

        line(1, model.close());
        line(0, "</xmi:XMI>");
        return out_.str();
    }

private:
    void line(int depth, const std::string& text) { out_ << std::string(depth * 2, ' ') << text << '\n'; }

    void useCase(const UseCaseAst& uc)
    {
        const std::string id = "uc." + uc.name;
        Element e(uc.isHandler ? "ucm:Handler" : "ucm:UseCase");
        e.attr("xmi:id", id).attr("name", uc.name).optAttr("scope", uc.scope);
        if (uc.level)
            e.attr("level", toString(*uc.level));
        e.optAttr("intention", uc.intention)
            .optAttr("multiplicity", uc.multiplicity)
            .optAttr("precondition", uc.precondition)
            .optAttr("postcondition", uc.postcondition);
        if (uc.main)
        {
            if (uc.main->entrySwitch)
                e.attr("entryMode", "mode." + uc.main->entrySwitch->mode.text);
            if (uc.main->exitSwitch)
                e.attr("exitMode", "mode." + uc.main->exitSwitch->mode.text);
            if (uc.main->outcome)
                e.attr("outcome", toString(uc.main->outcome->kind));
        }
        line(2, e.open());

        auto actors = [&](const std::vector<ActorRef>& list, std::string_view role) {
            for (const auto& a : list)
            {
                Element ae("actor");
                ae.attr("role", role).attr("actor", actorId(a));
                if (a.multiplicity)
                {
                    ae.attr("lower", std::to_string(a.multiplicity->lower));
                    ae.attr("upper", a.multiplicity->upper ? std::to_string(*a.multiplicity->upper) : "*");
                }
                line(3, ae.empty());
            }
        };
        actors(uc.primaryActors, "primary");
        actors(uc.secondaryActors, "secondary");
        actors(uc.facilitatorActors, "facilitator");

        for (const auto& ctx : uc.contexts)
        {
            Element ce("context");
            ce.attr("useCase", "uc." + ctx.useCase.text)
                .attr("exception", exceptionId(m_, ctx.exception))
                .attr("relation", toString(ctx.relation));
            line(3, ce.empty());
        }
        if (uc.main)
            for (const auto& s : uc.main->steps)
                step(id, s, 3);
        for (const auto& b : uc.extensions)
            block(id, b, 3);
        line(2, e.close());
    }

    void step(const std::string& ucId, const Step& s, int depth)
    {
        Element e("ucm:Step");
        e.attr("xmi:id", ucId + ".step." + s.label.label.str()).attr("label", s.label.label.str());
        std::visit(
            [&](const auto& p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, Interaction>)
                    e.attr("kind", "interaction")
                        .attr("source", p.source.text)
                        .attr("target", p.target.text)
                        .attr("message", p.message);
                else if constexpr (std::is_same_v<T, Invocation>)
                    e.attr("kind", "invocation").attr("useCase", "uc." + p.target.text);
                else if constexpr (std::is_same_v<T, Condition>)
                    e.attr("kind", "condition").attr("text", p.text);
                else if constexpr (std::is_same_v<T, Internal>)
                {
                    e.attr("kind", "internal").attr("description", p.description);
                    if (p.timeout)
                    {
                        std::ostringstream amount;
                        amount << p.timeout->amount;
                        e.attr("timeout", amount.str()).attr("unit", toString(p.timeout->unit));
                    }
                }
                else if constexpr (std::is_same_v<T, Goto>)
                    e.attr("kind", "goto").attr("step", ucId + ".step." + p.target.label.str());
                else if constexpr (std::is_same_v<T, Repeat>)
                    e.attr("kind", "repeat")
                        .attr("first", ucId + ".step." + p.first.label.str())
                        .attr("last", ucId + ".step." + p.last.label.str());
                else
                    e.attr("kind", "raise").attr("exception", exceptionId(m_, p.exception));
            },
            s.payload);
        line(depth, e.empty());
    }

    void block(const std::string& ucId, const ExtensionBlock& b, int depth)
    {
        Element e("ucm:ExtensionBlock");
        e.attr("xmi:id", ucId + ".block." + b.label.label.str())
            .attr("label", b.label.label.str())
            .attr("kind", toString(b.kind))
            .optAttr("guard", b.guard);
        if (b.entrySwitch)
            e.attr("entryMode", "mode." + b.entrySwitch->mode.text);
        if (b.exitSwitch)
            e.attr("exitMode", "mode." + b.exitSwitch->mode.text);
        if (b.outcome)
        {
            e.attr("outcome", toString(b.outcome->kind));
            if (b.outcome->continueTarget)
                e.attr("continueAt", ucId + ".step." + b.outcome->continueTarget->label.str());
        }
        line(depth, e.open());
        for (const auto& s : b.steps)
            step(ucId, s, depth + 1);
        for (const auto& nested : b.blocks)
            block(ucId, nested, depth + 1);
        line(depth, e.close());
    }

    const ResolvedModel& m_;
    std::ostringstream out_;
};

std::string dotQuote(std::string_view text)
{
    std::string out = "\"";
    for (char c : text)
    {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

} // namespace

std::string exportXmi(const ResolvedModel& m) { return XmiWriter(m).write(); }

std::string exportDot(const ResolvedModel& m)
{
    const auto& ast = m.ast();
    std::ostringstream out;
    out << "digraph " << dotQuote(ast.name) << " {\n";
    out << "  rankdir=LR;\n";

    for (const auto& uc : ast.useCases)
        out << "  " << dotQuote("uc:" + uc.name) << " [label=" << dotQuote(uc.name) << ", shape=ellipse"
            << (uc.isHandler ? ", style=dashed" : "") << "];\n";

    std::set<std::string> actors;
    for (const auto& uc : ast.useCases)
        for (const ActorRef* a : uc.allActors())
            if (actors.insert(a->name).second)
                out << "  " << dotQuote("actor:" + a->name) << " [label=" << dotQuote(a->name)
                    << ", shape=box];\n";

    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& uc : ast.useCases)
        for (const ActorRef* a : uc.allActors())
            if (seen.insert({"actor:" + a->name, uc.name}).second)
                out << "  " << dotQuote("actor:" + a->name) << " -> " << dotQuote("uc:" + uc.name)
                    << " [arrowhead=none];\n";

    seen.clear();
    for (const auto& uc : ast.useCases)
        forEachStep(uc, [&](const Step& s) {
            const auto* inv = s.as<Invocation>();
            if (inv && seen.insert({uc.name, inv->target.text}).second)
                out << "  " << dotQuote("uc:" + uc.name) << " -> " << dotQuote("uc:" + inv->target.text)
                    << " [label=\"<<include>>\", style=dashed];\n";
        });

    seen.clear();
    for (const auto& uc : ast.useCases)
        for (const auto& ctx : uc.contexts)
        {
            const std::string label = ctx.relation == ContextRelation::InterruptFail ? "<<interrupt & fail>>"
                                                                                      : "<<interrupt & continue>>";
            if (seen.insert({uc.name, ctx.useCase.text + "\n" + label}).second)
                out << "  " << dotQuote("uc:" + uc.name) << " -> " << dotQuote("uc:" + ctx.useCase.text)
                    << " [label=" << dotQuote(label) << "];\n";
        }

    out << "}\n";
    return out.str();
}

} // namespace ucm
