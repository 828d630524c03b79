#include "ucm/export.hpp"

#include <json.hpp>

#include <stdexcept>

namespace ucm {

using Json = nlohmann::ordered_json;

namespace {

// ---- export ---------------------------------------------------------------

template <typename T> Json optionalJson(const std::optional<T>& v)
{
    return v ? Json(*v) : Json(nullptr);
}

Json switchJson(const std::optional<ModeSwitch>& sw)
{
    return sw ? Json(sw->mode.text) : Json(nullptr);
}

Json namesJson(const std::vector<Name>& names)
{
    Json out = Json::array();
    for (const auto& n : names)
        out.push_back(n.text);
    return out;
}

Json exceptionRefJson(const ExceptionRef& r)
{
    Json j;
    j["category"] = r.categoryText;
    j["name"] = r.name;
    return j;
}

Json actorJson(const ActorRef& a)
{
    Json j;
    j["category"] = a.categoryText;
    j["name"] = a.name;
    if (a.multiplicity)
    {
        Json mj;
        mj["lower"] = a.multiplicity->lower;
        mj["upper"] = optionalJson(a.multiplicity->upper);
        j["multiplicity"] = mj;
    }
    else
        j["multiplicity"] = nullptr;
    return j;
}

Json actorsJson(const std::vector<ActorRef>& actors)
{
    Json out = Json::array();
    for (const auto& a : actors)
        out.push_back(actorJson(a));
    return out;
}

Json stepJson(const Step& s)
{
    Json j;
    j["label"] = s.label.label.str();
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Interaction>)
            {
                j["kind"] = "interaction";
                j["from"] = p.source.text;
                j["to"] = p.target.text;
                j["message"] = p.message;
            }
            else if constexpr (std::is_same_v<T, Invocation>)
            {
                j["kind"] = "invoke";
                j["target"] = p.target.text;
            }
            else if constexpr (std::is_same_v<T, Condition>)
            {
                j["kind"] = "condition";
                j["text"] = p.text;
            }
            else if constexpr (std::is_same_v<T, Internal>)
            {
                j["kind"] = "internal";
                j["description"] = p.description;
                if (p.timeout)
                {
                    Json tj;
                    tj["amount"] = p.timeout->amount;
                    tj["unit"] = toString(p.timeout->unit);
                    j["timeout"] = tj;
                }
                else
                    j["timeout"] = nullptr;
            }
            else if constexpr (std::is_same_v<T, Goto>)
            {
                j["kind"] = "goto";
                j["target"] = p.target.label.str();
            }
            else if constexpr (std::is_same_v<T, Repeat>)
            {
                j["kind"] = "repeat";
                j["first"] = p.first.label.str();
                j["last"] = p.last.label.str();
            }
            else
            {
                j["kind"] = "raise";
                j["exception"] = exceptionRefJson(p.exception);
            }
        },
        s.payload);
    return j;
}

Json stepsJson(const std::vector<Step>& steps)
{
    Json out = Json::array();
    for (const auto& s : steps)
        out.push_back(stepJson(s));
    return out;
}

Json outcomeJson(const std::optional<Outcome>& o)
{
    if (!o)
        return nullptr;
    Json j;
    j["kind"] = toString(o->kind);
    j["continueTarget"] = o->continueTarget ? Json(o->continueTarget->label.str()) : Json(nullptr);
    return j;
}

Json blockJson(const ExtensionBlock& b)
{
    Json j;
    j["label"] = b.label.label.str();
    j["kind"] = toString(b.kind);
    j["guard"] = optionalJson(b.guard);
    j["entrySwitch"] = switchJson(b.entrySwitch);
    j["steps"] = stepsJson(b.steps);
    Json nested = Json::array();
    for (const auto& n : b.blocks)
        nested.push_back(blockJson(n));
    j["blocks"] = nested;
    j["exitSwitch"] = switchJson(b.exitSwitch);
    j["outcome"] = outcomeJson(b.outcome);
    return j;
}

Json useCaseJson(const UseCaseAst& uc)
{
    Json j;
    j["name"] = uc.name;
    j["handler"] = uc.isHandler;
    j["scope"] = optionalJson(uc.scope);
    j["level"] = uc.level ? Json(toString(*uc.level)) : Json(nullptr);
    j["intention"] = optionalJson(uc.intention);
    j["multiplicity"] = optionalJson(uc.multiplicity);
    j["primaryActors"] = actorsJson(uc.primaryActors);
    j["secondaryActors"] = actorsJson(uc.secondaryActors);
    j["facilitatorActors"] = actorsJson(uc.facilitatorActors);
    j["precondition"] = optionalJson(uc.precondition);
    j["postcondition"] = optionalJson(uc.postcondition);
    Json contexts = Json::array();
    for (const auto& c : uc.contexts)
    {
        Json cj;
        cj["usecase"] = c.useCase.text;
        cj["exception"] = exceptionRefJson(c.exception);
        cj["relation"] = toString(c.relation);
        contexts.push_back(cj);
    }
    j["contexts"] = contexts;
    if (uc.main)
    {
        Json mj;
        mj["entrySwitch"] = switchJson(uc.main->entrySwitch);
        mj["steps"] = stepsJson(uc.main->steps);
        mj["exitSwitch"] = switchJson(uc.main->exitSwitch);
        mj["outcome"] = outcomeJson(uc.main->outcome);
        j["main"] = mj;
    }
    else
        j["main"] = nullptr;
    Json blocks = Json::array();
    for (const auto& b : uc.extensions)
        blocks.push_back(blockJson(b));
    j["extensions"] = blocks;
    return j;
}

// ---- import ---------------------------------------------------------------

struct SchemaError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
    throw SchemaError((path.empty() ? std::string("/") : path) + ": " + what);
}

const Json& field(const Json& obj, const char* key, const std::string& path)
{
    if (!obj.is_object())
        fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        fail(path, std::string("missing field '") + key + "'");
    return *it;
}

std::string str(const Json& obj, const char* key, const std::string& path)
{
    const Json& v = field(obj, key, path);
    if (!v.is_string())
        fail(path + "/" + key, "expected a string");
    return v.get<std::string>();
}

std::optional<std::string> optStr(const Json& obj, const char* key, const std::string& path)
{
    const Json& v = field(obj, key, path);
    if (v.is_null())
        return std::nullopt;
    if (!v.is_string())
        fail(path + "/" + key, "expected a string or null");
    return v.get<std::string>();
}

bool boolean(const Json& obj, const char* key, const std::string& path)
{
    const Json& v = field(obj, key, path);
    if (!v.is_boolean())
        fail(path + "/" + key, "expected a boolean");
    return v.get<bool>();
}

const Json& array(const Json& obj, const char* key, const std::string& path)
{
    const Json& v = field(obj, key, path);
    if (!v.is_array())
        fail(path + "/" + key, "expected an array");
    return v;
}

template <typename E, typename F> E enumValue(const Json& obj, const char* key, const std::string& path, F parse)
{
    const std::string text = str(obj, key, path);
    auto v = parse(text);
    if (!v)
        fail(path + "/" + key, "unknown value '" + text + "'");
    return *v;
}

StepLabel label(const std::string& text, const std::string& path)
{
    auto l = StepLabel::parse(text);
    if (!l)
        fail(path, "invalid step label '" + text + "'");
    return *l;
}

LabelRef labelRef(const Json& obj, const char* key, const std::string& path)
{
    return {label(str(obj, key, path), path + "/" + key), {}};
}

std::optional<ModeSwitch> modeSwitch(const Json& obj, const char* key, const std::string& path)
{
    auto name = optStr(obj, key, path);
    if (!name)
        return std::nullopt;
    return ModeSwitch{{*name, {}}, {}};
}

std::vector<Name> names(const Json& obj, const char* key, const std::string& path)
{
    std::vector<Name> out;
    const Json& arr = array(obj, key, path);
    for (std::size_t i = 0; i < arr.size(); ++i)
    {
        if (!arr[i].is_string())
            fail(path + "/" + key + "/" + std::to_string(i), "expected a string");
        out.push_back({arr[i].get<std::string>(), {}});
    }
    return out;
}

ExceptionRef exceptionRef(const Json& j, const std::string& path)
{
    ExceptionRef r;
    r.categoryText = str(j, "category", path);
    r.category = exceptionCategoryFromString(r.categoryText);
    r.name = str(j, "name", path);
    return r;
}

std::vector<ActorRef> actors(const Json& obj, const char* key, const std::string& path)
{
    std::vector<ActorRef> out;
    const Json& arr = array(obj, key, path);
    for (std::size_t i = 0; i < arr.size(); ++i)
    {
        const std::string p = path + "/" + key + "/" + std::to_string(i);
        ActorRef a;
        a.categoryText = str(arr[i], "category", p);
        a.category = actorCategoryFromString(a.categoryText);
        a.name = str(arr[i], "name", p);
        const Json& mj = field(arr[i], "multiplicity", p);
        if (!mj.is_null())
        {
            Multiplicity mult;
            const Json& lower = field(mj, "lower", p + "/multiplicity");
            const Json& upper = field(mj, "upper", p + "/multiplicity");
            if (!lower.is_number_integer() || !(upper.is_null() || upper.is_number_integer()))
                fail(p + "/multiplicity", "bounds must be integers");
            mult.lower = lower.get<long long>();
            if (!upper.is_null())
                mult.upper = upper.get<long long>();
            a.multiplicity = mult;
        }
        out.push_back(std::move(a));
    }
    return out;
}

Step step(const Json& j, const std::string& path)
{
    Step s;
    s.label = {label(str(j, "label", path), path + "/label"), {}};
    const std::string kind = str(j, "kind", path);
    if (kind == "interaction")
        s.payload = Interaction{{str(j, "from", path), {}}, {str(j, "to", path), {}}, str(j, "message", path)};
    else if (kind == "invoke")
        s.payload = Invocation{{str(j, "target", path), {}}};
    else if (kind == "condition")
        s.payload = Condition{str(j, "text", path)};
    else if (kind == "internal")
    {
        Internal in{str(j, "description", path), std::nullopt};
        const Json& tj = field(j, "timeout", path);
        if (!tj.is_null())
        {
            const Json& amount = field(tj, "amount", path + "/timeout");
            if (!amount.is_number())
                fail(path + "/timeout/amount", "expected a number");
            in.timeout = Timeout{amount.get<double>(),
                                 enumValue<TimeUnit>(tj, "unit", path + "/timeout", timeUnitFromString)};
        }
        s.payload = in;
    }
    else if (kind == "goto")
        s.payload = Goto{labelRef(j, "target", path)};
    else if (kind == "repeat")
        s.payload = Repeat{labelRef(j, "first", path), labelRef(j, "last", path)};
    else if (kind == "raise")
        s.payload = Raise{exceptionRef(field(j, "exception", path), path + "/exception")};
    else
        fail(path + "/kind", "unknown step kind '" + kind + "'");
    return s;
}

std::vector<Step> steps(const Json& obj, const std::string& path)
{
    std::vector<Step> out;
    const Json& arr = array(obj, "steps", path);
    for (std::size_t i = 0; i < arr.size(); ++i)
        out.push_back(step(arr[i], path + "/steps/" + std::to_string(i)));
    return out;
}

std::optional<Outcome> outcome(const Json& obj, const std::string& path)
{
    const Json& oj = field(obj, "outcome", path);
    if (oj.is_null())
        return std::nullopt;
    const std::string p = path + "/outcome";
    Outcome o;
    o.kind = enumValue<OutcomeKind>(oj, "kind", p, outcomeKindFromString);
    if (auto target = optStr(oj, "continueTarget", p))
        o.continueTarget = LabelRef{label(*target, p + "/continueTarget"), {}};
    return o;
}

ExtensionBlock block(const Json& j, const std::string& path)
{
    ExtensionBlock b;
    b.label = labelRef(j, "label", path);
    b.kind = enumValue<BlockKind>(j, "kind", path, blockKindFromString);
    b.guard = optStr(j, "guard", path);
    b.entrySwitch = modeSwitch(j, "entrySwitch", path);
    b.steps = steps(j, path);
    const Json& nested = array(j, "blocks", path);
    for (std::size_t i = 0; i < nested.size(); ++i)
        b.blocks.push_back(block(nested[i], path + "/blocks/" + std::to_string(i)));
    b.exitSwitch = modeSwitch(j, "exitSwitch", path);
    b.outcome = outcome(j, path);
    return b;
}

UseCaseAst useCase(const Json& j, const std::string& path)
{
    UseCaseAst uc;
    uc.name = str(j, "name", path);
    uc.isHandler = boolean(j, "handler", path);
    uc.scope = optStr(j, "scope", path);
    if (auto level = optStr(j, "level", path))
    {
        uc.level = levelFromString(*level);
        if (!uc.level)
            fail(path + "/level", "unknown value '" + *level + "'");
    }
    uc.intention = optStr(j, "intention", path);
    uc.multiplicity = optStr(j, "multiplicity", path);
    uc.primaryActors = actors(j, "primaryActors", path);
    uc.secondaryActors = actors(j, "secondaryActors", path);
    uc.facilitatorActors = actors(j, "facilitatorActors", path);
    uc.precondition = optStr(j, "precondition", path);
    uc.postcondition = optStr(j, "postcondition", path);
    const Json& contexts = array(j, "contexts", path);
    for (std::size_t i = 0; i < contexts.size(); ++i)
    {
        const std::string p = path + "/contexts/" + std::to_string(i);
        HandlerContext c;
        c.useCase = {str(contexts[i], "usecase", p), {}};
        c.exception = exceptionRef(field(contexts[i], "exception", p), p + "/exception");
        c.relation = enumValue<ContextRelation>(contexts[i], "relation", p, relationFromString);
        uc.contexts.push_back(std::move(c));
    }
    const Json& mj = field(j, "main", path);
    if (!mj.is_null())
    {
        const std::string p = path + "/main";
        Scenario s;
        s.entrySwitch = modeSwitch(mj, "entrySwitch", p);
        s.steps = steps(mj, p);
        s.exitSwitch = modeSwitch(mj, "exitSwitch", p);
        s.outcome = outcome(mj, p);
        uc.main = std::move(s);
    }
    const Json& blocks = array(j, "extensions", path);
    for (std::size_t i = 0; i < blocks.size(); ++i)
        uc.extensions.push_back(block(blocks[i], path + "/extensions/" + std::to_string(i)));
    return uc;
}

AstModel model(const Json& doc)
{
    if (!doc.is_object())
        fail("", "document must be an object");
    const Json& version = field(doc, "formatVersion", "");
    if (!version.is_number_integer() || version.get<long long>() != kJsonFormatVersion)
        fail("/formatVersion", "unsupported format version " + version.dump() + " (expected " +
                                   std::to_string(kJsonFormatVersion) + ")");
    AstModel m;
    m.name = str(doc, "name", "");
    const Json& modes = array(doc, "modes", "");
    for (std::size_t i = 0; i < modes.size(); ++i)
    {
        const std::string p = "/modes/" + std::to_string(i);
        ModeDecl d;
        d.name = str(modes[i], "name", p);
        d.kind = enumValue<ModeKind>(modes[i], "kind", p, modeKindFromString);
        d.isDefault = boolean(modes[i], "default", p);
        d.offeredServices = names(modes[i], "offers", p);
        m.modes.push_back(std::move(d));
    }
    const Json& exceptions = array(doc, "exceptions", "");
    for (std::size_t i = 0; i < exceptions.size(); ++i)
    {
        const std::string p = "/exceptions/" + std::to_string(i);
        ExceptionDef d;
        d.categoryText = str(exceptions[i], "category", p);
        d.category = exceptionCategoryFromString(d.categoryText);
        d.name = str(exceptions[i], "name", p);
        d.isGlobal = boolean(exceptions[i], "global", p);
        m.exceptions.push_back(std::move(d));
    }
    const Json& services = array(doc, "services", "");
    for (std::size_t i = 0; i < services.size(); ++i)
    {
        const std::string p = "/services/" + std::to_string(i);
        m.services.push_back({str(services[i], "name", p), names(services[i], "provides", p), {}});
    }
    const Json& useCases = array(doc, "usecases", "");
    for (std::size_t i = 0; i < useCases.size(); ++i)
        m.useCases.push_back(useCase(useCases[i], "/usecases/" + std::to_string(i)));
    return m;
}

} // namespace

std::string exportJson(const AstModel& m)
{
    Json doc;
    doc["formatVersion"] = kJsonFormatVersion;
    doc["name"] = m.name;
    Json modes = Json::array();
    for (const auto& mode : m.modes)
    {
        Json j;
        j["name"] = mode.name;
        j["kind"] = toString(mode.kind);
        j["default"] = mode.isDefault;
        j["offers"] = namesJson(mode.offeredServices);
        modes.push_back(j);
    }
    doc["modes"] = modes;
    Json exceptions = Json::array();
    for (const auto& e : m.exceptions)
    {
        Json j;
        j["category"] = e.categoryText;
        j["name"] = e.name;
        j["global"] = e.isGlobal;
        exceptions.push_back(j);
    }
    doc["exceptions"] = exceptions;
    Json services = Json::array();
    for (const auto& s : m.services)
    {
        Json j;
        j["name"] = s.name;
        j["provides"] = namesJson(s.goals);
        services.push_back(j);
    }
    doc["services"] = services;
    Json useCases = Json::array();
    for (const auto& uc : m.useCases)
        useCases.push_back(useCaseJson(uc));
    doc["usecases"] = useCases;
    return doc.dump(2) + "\n";
}

std::string exportJson(const ResolvedModel& m) { return exportJson(m.ast()); }

ImportResult importJson(const std::string& text)
{
    ImportResult result;
    Json doc;
    try
    {
        doc = Json::parse(text);
    }
    catch (const Json::parse_error& e)
    {
        result.diagnostics.push_back(
            makeDiagnostic(DiagCode::E000, std::string("malformed JSON: ") + e.what(), {}));
        return result;
    }
    try
    {
        result.model = model(doc);
    }
    catch (const SchemaError& e)
    {
        result.diagnostics.push_back(makeDiagnostic(DiagCode::E000, std::string("schema error at ") + e.what(), {}));
    }
    catch (const Json::exception& e)
    {
        result.diagnostics.push_back(makeDiagnostic(DiagCode::E000, std::string("schema error: ") + e.what(), {}));
    }
    return result;
}

} // namespace ucm
