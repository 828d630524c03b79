#include "ucm/parser.hpp"

#include "ucm/lexer.hpp"

#include <charconv>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace ucm {

namespace {

struct SyntaxError
{
    Diagnostic diagnostic;
};

// Fixed clause order inside a use case; actor lines share one slot and may repeat.
enum ClauseSlot
{
    kScope,
    kLevel,
    kIntention,
    kMultiplicity,
    kActors,
    kPrecondition,
    kPostcondition,
    kContexts,
};

std::optional<ClauseSlot> clauseSlot(std::string_view word)
{
    if (word == "scope") return kScope;
    if (word == "level") return kLevel;
    if (word == "intention") return kIntention;
    if (word == "multiplicity") return kMultiplicity;
    if (word == "primary" || word == "secondary" || word == "facilitator") return kActors;
    if (word == "precondition") return kPrecondition;
    if (word == "postcondition") return kPostcondition;
    if (word == "contexts") return kContexts;
    return std::nullopt;
}

class Parser
{
public:
    Parser(const SourceFile& file, std::vector<Token> tokens) : file_(file), tokens_(std::move(tokens)) {}

    std::optional<AstModel> parseModel(Diagnostics& diags)
    {
        AstModel model;
        const std::size_t start = peek().start;
        bool failed = false;
        try
        {
            expectWord("model");
            model.name = expect(TokenKind::Ident, "model name").value;
            parseHeader(model);
        }
        catch (SyntaxError& e)
        {
            diags.push_back(std::move(e.diagnostic));
            failed = true;
            synchronize();
        }

        while (!peek().is(TokenKind::End))
        {
            try
            {
                if (!peek().isWord("usecase") && !peek().isWord("handler"))
                    fail({"'usecase'", "'handler'"});
                model.useCases.push_back(parseUseCase());
            }
            catch (SyntaxError& e)
            {
                diags.push_back(std::move(e.diagnostic));
                failed = true;
                advance();
                synchronize();
            }
        }
        model.span = spanFrom(start);
        if (failed)
            return std::nullopt;
        return model;
    }

private:
    // ----- token helpers -------------------------------------------------

    const Token& peek(std::size_t ahead = 0) const
    {
        const std::size_t idx = std::min(pos_ + ahead, tokens_.size() - 1);
        return tokens_[idx];
    }

    const Token& advance()
    {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size())
            ++pos_;
        lastEnd_ = t.end;
        return t;
    }

    SourceSpan spanFrom(std::size_t start) const { return file_.span(start, std::max(start, lastEnd_)); }

    [[noreturn]] void fail(std::initializer_list<std::string_view> expected, std::string detail = {})
    {
        const Token& t = peek();
        std::ostringstream msg;
        if (t.is(TokenKind::End))
            msg << "unexpected end of file";
        else
            msg << "unexpected " << describe(t.kind) << " '" << t.value << "'";
        if (expected.size() > 0)
        {
            msg << ", expected ";
            if (expected.size() > 1)
                msg << "one of ";
            bool first = true;
            for (auto e : expected)
            {
                msg << (first ? "" : ", ") << e;
                first = false;
            }
        }
        if (!detail.empty())
            msg << " (" << detail << ")";
        std::vector<std::string> suggestions;
        for (auto e : expected)
            suggestions.emplace_back(e);
        throw SyntaxError{makeDiagnostic(DiagCode::E000, msg.str(), file_.span(t.start, t.end), std::move(suggestions))};
    }

    [[noreturn]] void failAt(const Token& t, std::string message)
    {
        throw SyntaxError{makeDiagnostic(DiagCode::E000, std::move(message), file_.span(t.start, t.end))};
    }

    const Token& expect(TokenKind kind, std::string_view what = {})
    {
        if (!peek().is(kind))
        {
            const std::string label = what.empty() ? std::string(describe(kind)) : std::string(what);
            fail({label});
        }
        return advance();
    }

    const Token& expectWord(std::string_view word)
    {
        if (!peek().isWord(word))
        {
            const std::string quoted = "'" + std::string(word) + "'";
            fail({quoted});
        }
        return advance();
    }

    bool acceptWord(std::string_view word)
    {
        if (peek().isWord(word))
        {
            advance();
            return true;
        }
        return false;
    }

    bool accept(TokenKind kind)
    {
        if (peek().is(kind))
        {
            advance();
            return true;
        }
        return false;
    }

    Name expectName(std::string_view what)
    {
        const Token& t = expect(TokenKind::Ident, what);
        return Name{t.value, file_.span(t.start, t.end)};
    }

    void synchronize()
    {
        while (!peek().is(TokenKind::End))
        {
            if ((peek().isWord("usecase") || peek().isWord("handler")) && peek(1).is(TokenKind::Ident) &&
                peek(2).is(TokenKind::LBrace))
                return;
            advance();
        }
    }

    // ----- header ----------------------------------------------------------

    void parseHeader(AstModel& model)
    {
        const Token& modesKw = expectWord("modes");
        expect(TokenKind::LBrace);
        while (!peek().is(TokenKind::RBrace))
            model.modes.push_back(parseModeDecl());
        expect(TokenKind::RBrace);

        std::size_t defaults = 0;
        for (const auto& m : model.modes)
            defaults += m.isDefault ? 1 : 0;
        if (!model.modes.empty() && defaults != 1)
            failAt(modesKw, defaults == 0 ? "modes block declares no default mode"
                                          : "modes block declares more than one default mode");

        expectWord("exceptions");
        expect(TokenKind::LBrace);
        while (!peek().is(TokenKind::RBrace))
            model.exceptions.push_back(parseExceptionDecl());
        expect(TokenKind::RBrace);

        if (acceptWord("services"))
        {
            expect(TokenKind::LBrace);
            while (!peek().is(TokenKind::RBrace))
                model.services.push_back(parseServiceDecl());
            expect(TokenKind::RBrace);
        }
    }

    ModeDecl parseModeDecl()
    {
        ModeDecl mode;
        const std::size_t start = peek().start;
        mode.isDefault = acceptWord("default");
        const Token& kindTok = peek();
        const auto kind = kindTok.is(TokenKind::Ident) ? modeKindFromString(kindTok.value) : std::nullopt;
        if (!kind)
            fail({"'normal'", "'degraded'", "'restricted'", "'emergency'"});
        advance();
        mode.kind = *kind;
        mode.name = expect(TokenKind::Ident, "mode name").value;
        if (acceptWord("offers"))
        {
            do
                mode.offeredServices.push_back(expectName("service name"));
            while (accept(TokenKind::Comma));
        }
        mode.span = spanFrom(start);
        return mode;
    }

    ExceptionRef parseExceptionRef()
    {
        ExceptionRef ref;
        const std::size_t start = peek().start;
        const Token& first = expect(TokenKind::Ident, "exception name");
        if (peek().is(TokenKind::ColonColon) && peek(1).is(TokenKind::Ident) && !peek(1).isWord("global"))
        {
            advance();
            ref.categoryText = first.value;
            ref.category = exceptionCategoryFromString(first.value);
            ref.name = advance().value;
        }
        else
        {
            ref.name = first.value;
        }
        ref.span = spanFrom(start);
        return ref;
    }

    ExceptionDef parseExceptionDecl()
    {
        const std::size_t start = peek().start;
        expectWord("exception");
        ExceptionRef ref = parseExceptionRef();
        ExceptionDef def;
        def.categoryText = std::move(ref.categoryText);
        def.category = ref.category;
        def.name = std::move(ref.name);
        if (acceptWord("global"))
            def.isGlobal = true;
        else if (peek().is(TokenKind::ColonColon) && peek(1).isWord("global"))
        {
            advance();
            advance();
            def.isGlobal = true;
        }
        def.span = spanFrom(start);
        return def;
    }

    ServiceDecl parseServiceDecl()
    {
        ServiceDecl svc;
        const std::size_t start = peek().start;
        expectWord("service");
        svc.name = expect(TokenKind::Ident, "service name").value;
        expectWord("provides");
        do
            svc.goals.push_back(expectName("use case name"));
        while (accept(TokenKind::Comma));
        svc.span = spanFrom(start);
        return svc;
    }

    // ----- use cases ---------------------------------------------------------

    std::string expectClauseString()
    {
        expect(TokenKind::Colon);
        return expect(TokenKind::String).value;
    }

    UseCaseAst parseUseCase()
    {
        UseCaseAst uc;
        const std::size_t start = peek().start;
        uc.isHandler = advance().value == "handler";
        const Token& nameTok = expect(TokenKind::Ident, "use case name");
        uc.name = nameTok.value;
        uc.nameSpan = file_.span(nameTok.start, nameTok.end);
        expect(TokenKind::LBrace);

        int lastSlot = -1;
        while (peek().is(TokenKind::Ident) && (peek(1).is(TokenKind::Colon) || clauseSlot(peek().value)))
        {
            const Token& kw = peek();
            const auto slot = clauseSlot(kw.value);
            if (!slot)
                fail({"a use case clause", "'main'", "'extensions'", "'}'"});
            if (*slot < lastSlot || (*slot == lastSlot && *slot != kActors))
                failAt(kw, "clause '" + kw.value + "' is duplicated or out of order; clauses must follow "
                           "scope, level, intention, multiplicity, actors, precondition, postcondition, contexts");
            lastSlot = *slot;
            parseClause(uc, *slot);
        }

        if (peek().isWord("main"))
            uc.main = parseMain();
        if (peek().isWord("extensions"))
        {
            advance();
            expect(TokenKind::LBrace);
            while (peek().isWord("block"))
                uc.extensions.push_back(parseBlock());
            if (!peek().is(TokenKind::RBrace))
                fail({"'block'", "'}'"});
            advance();
        }
        if (!peek().is(TokenKind::RBrace))
        {
            if (uc.main)
                fail({"'extensions'", "'}'"});
            fail({"a use case clause", "'main'", "'extensions'", "'}'"});
        }
        advance();
        uc.span = spanFrom(start);
        return uc;
    }

    void parseClause(UseCaseAst& uc, ClauseSlot slot)
    {
        const Token& kw = advance();
        switch (slot)
        {
        case kScope: uc.scope = expectClauseString(); break;
        case kIntention: uc.intention = expectClauseString(); break;
        case kMultiplicity: uc.multiplicity = expectClauseString(); break;
        case kPrecondition: uc.precondition = expectClauseString(); break;
        case kPostcondition: uc.postcondition = expectClauseString(); break;
        case kLevel: {
            expect(TokenKind::Colon);
            const auto level = peek().is(TokenKind::Ident) ? levelFromString(peek().value) : std::nullopt;
            if (!level)
                fail({"'summary'", "'user-goal'", "'sub-function'"});
            advance();
            uc.level = level;
            break;
        }
        case kActors: {
            expect(TokenKind::Colon);
            auto& list = kw.value == "primary"     ? uc.primaryActors
                         : kw.value == "secondary" ? uc.secondaryActors
                                                   : uc.facilitatorActors;
            do
                list.push_back(parseActorRef());
            while (accept(TokenKind::Comma));
            break;
        }
        case kContexts: {
            if (!uc.isHandler)
                failAt(kw, "the contexts & exceptions clause is only allowed in handler use cases");
            expect(TokenKind::Colon);
            do
                uc.contexts.push_back(parseContext());
            while (accept(TokenKind::Comma));
            break;
        }
        }
    }

    long long parseCount()
    {
        const Token& t = expect(TokenKind::Number, "integer");
        long long value = 0;
        const auto [ptr, ec] = std::from_chars(t.value.data(), t.value.data() + t.value.size(), value);
        if (ec != std::errc{} || ptr != t.value.data() + t.value.size())
            failAt(t, "expected a non-negative integer, found '" + t.value + "'");
        return value;
    }

    ActorRef parseActorRef()
    {
        ActorRef actor;
        const std::size_t start = peek().start;
        const Token& first = expect(TokenKind::Ident, "actor");
        if (accept(TokenKind::ColonColon))
        {
            actor.categoryText = first.value;
            actor.category = actorCategoryFromString(first.value);
            actor.name = expect(TokenKind::Ident, "actor name").value;
        }
        else
        {
            actor.name = first.value;
        }
        if (peek().is(TokenKind::LBracket))
        {
            Multiplicity mult;
            const std::size_t mstart = advance().start;
            mult.lower = parseCount();
            expect(TokenKind::DotDot);
            if (!accept(TokenKind::Star))
                mult.upper = parseCount();
            expect(TokenKind::RBracket);
            mult.span = spanFrom(mstart);
            actor.multiplicity = mult;
        }
        actor.span = spanFrom(start);
        return actor;
    }

    HandlerContext parseContext()
    {
        HandlerContext ctx;
        const std::size_t start = peek().start;
        ctx.useCase = expectName("context use case");
        expectWord("on");
        ctx.exception = parseExceptionRef();
        const auto relation = peek().is(TokenKind::Ident) ? relationFromString(peek().value) : std::nullopt;
        if (!relation)
            fail({"'interrupt-continue'", "'interrupt-fail'"});
        advance();
        ctx.relation = *relation;
        ctx.span = spanFrom(start);
        return ctx;
    }

    // ----- scenarios -------------------------------------------------------

    bool atStep() const
    {
        return (peek().is(TokenKind::Number) || peek().is(TokenKind::Label)) &&
               (peek(1).is(TokenKind::Dot) || peek(1).is(TokenKind::Minus));
    }

    LabelRef parseLabel(bool allowRange)
    {
        const Token& first = peek();
        if (!first.is(TokenKind::Number) && !first.is(TokenKind::Label))
            fail({"step label"});
        advance();
        std::string text = first.value;
        if (allowRange && first.is(TokenKind::Number) && peek().is(TokenKind::Minus) &&
            (peek(1).is(TokenKind::Number) || peek(1).is(TokenKind::Label)))
        {
            advance();
            text += "-" + advance().value;
        }
        auto label = StepLabel::parse(text);
        if (!label)
            throw SyntaxError{makeDiagnostic(DiagCode::E000, "malformed step label '" + text + "'",
                                             file_.span(first.start, lastEnd_))};
        return LabelRef{*label, file_.span(first.start, lastEnd_)};
    }

    ModeSwitch parseModeSwitch()
    {
        ModeSwitch ms;
        const std::size_t start = peek().start;
        expectWord("mode");
        expectWord("switch");
        expect(TokenKind::Colon);
        ms.mode = expectName("mode name");
        ms.span = spanFrom(start);
        return ms;
    }

    Outcome parseOutcome()
    {
        Outcome outcome;
        const std::size_t start = peek().start;
        expectWord("outcome");
        const auto kind = peek().is(TokenKind::Ident) ? outcomeKindFromString(peek().value) : std::nullopt;
        if (!kind)
            fail({"'success'", "'failure'", "'degraded'", "'abandoned'", "'continue'"});
        advance();
        outcome.kind = *kind;
        if (*kind == OutcomeKind::Continue)
            outcome.continueTarget = parseLabel(false);
        outcome.span = spanFrom(start);
        return outcome;
    }

    Step parseStep()
    {
        Step step;
        const std::size_t start = peek().start;
        step.label = parseLabel(true);
        expect(TokenKind::Dot);

        const Token& head = peek();
        if (head.isWord("invoke"))
        {
            advance();
            step.payload = Invocation{expectName("use case name")};
        }
        else if (head.isWord("condition"))
        {
            advance();
            step.payload = Condition{expect(TokenKind::String).value};
        }
        else if (head.isWord("internal"))
        {
            advance();
            Internal internal;
            if (acceptWord("timeout"))
            {
                const Token& amountTok = expect(TokenKind::Number, "timeout amount");
                const double amount = std::stod(amountTok.value);
                if (!(amount > 0))
                    failAt(amountTok, "timeout amount must be positive");
                const auto unit = peek().is(TokenKind::Ident) ? timeUnitFromString(peek().value) : std::nullopt;
                if (!unit)
                    fail({"'ms'", "'s'", "'min'"});
                advance();
                internal.timeout = Timeout{amount, *unit};
            }
            internal.description = expect(TokenKind::String).value;
            step.payload = std::move(internal);
        }
        else if (head.isWord("goto"))
        {
            advance();
            step.payload = Goto{parseLabel(false)};
        }
        else if (head.isWord("repeat"))
        {
            advance();
            Repeat repeat;
            repeat.first = parseLabel(false);
            expect(TokenKind::Minus);
            repeat.last = parseLabel(false);
            step.payload = std::move(repeat);
        }
        else if (head.isWord("raise"))
        {
            advance();
            step.payload = Raise{parseExceptionRef()};
        }
        else if (head.is(TokenKind::Ident))
        {
            Interaction interaction;
            interaction.source = expectName("endpoint");
            expect(TokenKind::Arrow);
            interaction.target = expectName("endpoint");
            expect(TokenKind::Colon);
            interaction.message = expect(TokenKind::String, "interaction message").value;
            step.payload = std::move(interaction);
        }
        else
        {
            fail({"'invoke'", "'condition'", "'internal'", "'goto'", "'repeat'", "'raise'", "interaction endpoint"});
        }
        step.span = spanFrom(start);
        return step;
    }

    Scenario parseMain()
    {
        Scenario main;
        const std::size_t start = peek().start;
        expectWord("main");
        expect(TokenKind::LBrace);
        if (peek().isWord("mode"))
            main.entrySwitch = parseModeSwitch();
        while (atStep())
            main.steps.push_back(parseStep());
        if (peek().isWord("mode"))
            main.exitSwitch = parseModeSwitch();
        if (!peek().isWord("outcome"))
        {
            if (main.exitSwitch)
                fail({"'outcome'"});
            fail({"step label", "'mode'", "'outcome'"});
        }
        main.outcome = parseOutcome();
        expect(TokenKind::RBrace);
        main.span = spanFrom(start);
        return main;
    }

    ExtensionBlock parseBlock()
    {
        ExtensionBlock block;
        const std::size_t start = peek().start;
        expectWord("block");
        block.label = parseLabel(true);
        if (!block.label.label.isBlockLabel())
            throw SyntaxError{makeDiagnostic(DiagCode::E000,
                                             "extension block label '" + block.label.label.str() +
                                                 "' must end in a letter (e.g. '" + block.label.label.str() + "a')",
                                             block.label.span)};
        const auto kind = peek().is(TokenKind::Ident) ? blockKindFromString(peek().value) : std::nullopt;
        if (!kind)
            fail({"'alternative'", "'exceptional'"});
        advance();
        block.kind = *kind;
        if (acceptWord("when"))
            block.guard = expect(TokenKind::String, "guard text").value;
        expect(TokenKind::LBrace);
        if (peek().isWord("mode"))
            block.entrySwitch = parseModeSwitch();
        for (;;)
        {
            if (atStep())
                block.steps.push_back(parseStep());
            else if (peek().isWord("block"))
                block.blocks.push_back(parseBlock());
            else
                break;
        }
        if (peek().isWord("mode"))
            block.exitSwitch = parseModeSwitch();
        if (!peek().isWord("outcome"))
        {
            if (block.exitSwitch)
                fail({"'outcome'"});
            fail({"step label", "'block'", "'mode'", "'outcome'"});
        }
        block.outcome = parseOutcome();
        expect(TokenKind::RBrace);
        block.span = spanFrom(start);
        return block;
    }

    const SourceFile& file_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::size_t lastEnd_ = 0;
};

} // namespace

ParseResult parse(std::string_view source, const std::string& file)
{
    const SourceFile src(file, source);
    LexResult lexed = tokenize(src);
    ParseResult result;
    result.diagnostics = std::move(lexed.diagnostics);

    Parser parser(src, std::move(lexed.tokens));
    auto model = parser.parseModel(result.diagnostics);
    if (result.diagnostics.empty())
        result.model = std::move(model);
    sortDiagnostics(result.diagnostics);
    return result;
}

std::string readSourceFile(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
        throw IoError("error reading '" + path.string() + "'");
    return buffer.str();
}

} // namespace ucm
