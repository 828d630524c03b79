#include "test_support.hpp"

#include "ucm/export.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <gtest/gtest.h>
#include <json.hpp>

#include <sstream>

namespace ucm {
namespace {

const char* kMinimal = "model M\nmodes { default normal N }\nexceptions { }\n";

ResolvedModel resolvedText(const std::string& text)
{
    auto r = testing::checkText(text);
    EXPECT_TRUE(r.model);
    return std::move(*r.model);
}

std::size_t countOccurrences(const std::string& text, const std::string& needle)
{
    std::size_t n = 0;
    for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1))
        ++n;
    return n;
}

TEST(Table, MarkdownOneByOne)
{
    const SummaryTable t{"T", {"H"}, {{"v"}}};
    EXPECT_EQ(renderTable(t, TableFormat::Markdown), "| H |\n| --- |\n| v |\n");
}

TEST(Table, MarkdownEscapesPipesAndNewlines)
{
    const SummaryTable t{"T", {"A"}, {{"x|y\nz"}}};
    EXPECT_EQ(renderTable(t, TableFormat::Markdown), "| A |\n| --- |\n| x\\|y<br>z |\n");
}

TEST(Table, CsvQuotesPerRfc4180)
{
    const SummaryTable t{"T", {"A", "B"}, {{"a,b", "say \"hi\""}, {"plain", "two\nlines"}}};
    EXPECT_EQ(renderTable(t, TableFormat::Csv),
              "A,B\r\n\"a,b\",\"say \"\"hi\"\"\"\r\nplain,\"two\nlines\"\r\n");
}

TEST(Table, RowsMatchColumnCount)
{
    const auto m = resolvedText(testing::kMiniModel);
    for (const auto& t : {toTable(exceptionSummary(m, ExceptionView::globalView()).value),
                          toTable(handlerSummary(m).value), toTable(modeSwitchTable(m)),
                          toTable(modeServiceTable(m))})
        for (const auto& row : t.rows)
            EXPECT_EQ(row.size(), t.columns.size()) << t.title;
}

TEST(Json, MinimalModelShape)
{
    const auto doc = nlohmann::json::parse(exportJson(resolvedText(kMinimal)));
    EXPECT_EQ(doc["formatVersion"], 1);
    EXPECT_EQ(doc["name"], "M");
    EXPECT_EQ(doc["modes"].size(), 1u);
    EXPECT_TRUE(doc["usecases"].is_array());
    EXPECT_TRUE(doc["usecases"].empty());
}

TEST(Json, KeyOrderIsFixed)
{
    const std::string text = exportJson(resolvedText(kMinimal));
    EXPECT_LT(text.find("\"formatVersion\""), text.find("\"name\""));
    EXPECT_LT(text.find("\"name\""), text.find("\"modes\""));
    EXPECT_LT(text.find("\"services\""), text.find("\"usecases\""));
}

TEST(Json, RoundTripIsIdempotent)
{
    const auto m = resolvedText(testing::kMiniModel);
    const std::string once = exportJson(m);
    const auto back = importJson(once);
    ASSERT_TRUE(back.ok());
    EXPECT_EQ(exportJson(*back.model), once);
    EXPECT_EQ(*back.model, withoutSpans(m.ast()));
}

TEST(Json, PreservesOptionalFields)
{
    const std::string text = R"(model K
modes { default normal N }
exceptions { }
usecase U {
  scope: "s"
  level: summary
  intention: "i"
  multiplicity: "m"
  primary: Human::A[2..*]
  facilitator: Software::F
  precondition: "pre"
  main {
    1. A -> System : "hi"
    2. internal timeout 250 ms "waits"
    3. repeat 1-2
    outcome success
  }
}
)";
    const auto parsed = parse(text, "k.ucm");
    ASSERT_TRUE(parsed.ok());
    const auto back = importJson(exportJson(*parsed.model));
    ASSERT_TRUE(back.ok());
    EXPECT_EQ(*back.model, withoutSpans(*parsed.model));
}

TEST(Json, UnknownVersionIsRejected)
{
    const auto r = importJson(R"({"formatVersion":2})");
    EXPECT_FALSE(r.ok());
    ASSERT_EQ(r.diagnostics.size(), 1u);
    EXPECT_EQ(r.diagnostics[0].code, DiagCode::E000);
    EXPECT_NE(r.diagnostics[0].message.find("formatVersion"), std::string::npos);
}

TEST(Json, TruncatedDocumentGivesNoModel)
{
    const std::string full = exportJson(resolvedText(testing::kMiniModel));
    const auto r = importJson(full.substr(0, full.size() / 2));
    EXPECT_FALSE(r.ok());
    ASSERT_FALSE(r.diagnostics.empty());
    EXPECT_EQ(r.diagnostics[0].code, DiagCode::E000);
}

TEST(Json, SchemaViolationNamesPath)
{
    auto doc = nlohmann::json::parse(exportJson(resolvedText(testing::kMiniModel)));
    doc["usecases"][1]["level"] = "galaxy";
    const auto r = importJson(doc.dump());
    EXPECT_FALSE(r.ok());
    ASSERT_FALSE(r.diagnostics.empty());
    EXPECT_NE(r.diagnostics[0].message.find("/usecases/1/level"), std::string::npos) << r.diagnostics[0].message;
}

boost::property_tree::ptree parseXml(const std::string& text)
{
    std::istringstream in(text);
    boost::property_tree::ptree tree;
    boost::property_tree::read_xml(in, tree);
    return tree;
}

TEST(Xmi, MinimalModelHasOneMode)
{
    const std::string xmi = exportXmi(resolvedText(kMinimal));
    EXPECT_NO_THROW(parseXml(xmi));
    EXPECT_EQ(countOccurrences(xmi, "<ucm:Mode "), 1u);
    const auto tree = parseXml(xmi);
    EXPECT_EQ(tree.get<std::string>("xmi:XMI.<xmlattr>.xmi:version"), "2.0");
    EXPECT_EQ(tree.get<std::string>("xmi:XMI.<xmlattr>.xmlns:ucm"), "http://ucm4iot/1.0");
}

TEST(Xmi, HandlerReferencesContextTargets)
{
    const std::string xmi = exportXmi(resolvedText(testing::kMiniModel));
    const auto tree = parseXml(xmi);
    std::set<std::string> ids;
    const auto& model = tree.get_child("xmi:XMI.ucm:Model");
    const boost::property_tree::ptree* unjam = nullptr;
    for (const auto& [tag, node] : model)
    {
        if (auto id = node.get_optional<std::string>("<xmlattr>.xmi:id"))
            ids.insert(*id);
        if (tag == "ucm:Handler" && node.get<std::string>("<xmlattr>.name") == "Unjam")
            unjam = &node;
    }
    ASSERT_TRUE(unjam);
    const auto& ctx = unjam->get_child("context.<xmlattr>");
    EXPECT_EQ(ctx.get<std::string>("useCase"), "uc.Mid");
    EXPECT_EQ(ctx.get<std::string>("exception"), "exc.HardwareException.Jam");
    EXPECT_TRUE(ids.count("uc.Mid"));
    EXPECT_TRUE(ids.count("exc.HardwareException.Jam"));
}

TEST(Xmi, Deterministic)
{
    const auto m = resolvedText(testing::kMiniModel);
    EXPECT_EQ(exportXmi(m), exportXmi(resolvedText(testing::kMiniModel)));
}

TEST(Dot, InterruptLabelsAndDashedHandlers)
{
    const std::string dot = exportDot(resolvedText(testing::kMiniModel));
    EXPECT_NE(dot.find(R"("uc:Reroute" -> "uc:Top" [label="<<interrupt & fail>>"])"), std::string::npos) << dot;
    EXPECT_NE(dot.find(R"("uc:Unjam" -> "uc:Mid" [label="<<interrupt & continue>>"])"), std::string::npos);
    EXPECT_NE(dot.find(R"("uc:Unjam" [label="Unjam", shape=ellipse, style=dashed])"), std::string::npos);
    EXPECT_NE(dot.find(R"("uc:Top" -> "uc:Mid" [label="<<include>>", style=dashed])"), std::string::npos);
    EXPECT_NE(dot.find(R"("actor:Box" [label="Box", shape=box])"), std::string::npos);
}

TEST(Dot, EdgelessModel)
{
    const std::string dot = exportDot(resolvedText(kMinimal));
    EXPECT_EQ(dot.rfind("digraph \"M\" {", 0), 0u);
    EXPECT_EQ(dot.find("->"), std::string::npos);
    EXPECT_EQ(dot.back(), '\n');
}

} // namespace
} // namespace ucm
