#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "apoa/cli.hpp"
#include "apoa/csv.hpp"
#include "apoa/serialize.hpp"
#include "helpers.hpp"

namespace apoa {
namespace {

const std::string kCatalog = std::string(APOA_TEST_DATA) + "/catalog_7x3.csv";

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

Run solve(std::vector<std::string> extra) {
    std::vector<std::string> args{"solve", "--catalog", kCatalog};
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
}

TEST(Cli, UsageAndHelp) {
    EXPECT_EQ(run({}).code, kExitUsage);
    EXPECT_EQ(run({"bogus"}).code, kExitUsage);
    const auto help = run({"--help"});
    EXPECT_EQ(help.code, kExitOk);
    EXPECT_NE(help.out.find("solve"), std::string::npos);
    EXPECT_EQ(run({"solve", "--help"}).code, kExitOk);
    EXPECT_EQ(solve({}).code, kExitUsage);  // no instance selector
}

TEST(Cli, SelectorErrors) {
    EXPECT_EQ(solve({"--instance", "0"}).code, kExitUsage);
    EXPECT_EQ(solve({"--instance", "32"}).code, kExitUsage);
    EXPECT_EQ(solve({"--instance", "8", "--metrics", "power"}).code, kExitUsage);
    EXPECT_EQ(solve({"--context", "moon-base"}).code, kExitUsage);
    EXPECT_EQ(solve({"--metrics", "power,speed"}).code, kExitUsage);
    EXPECT_EQ(solve({"--instance", "8", "--solver", "annealing"}).code, kExitUsage);
    EXPECT_EQ(solve({"--instance", "8", "--battery-ah", "-1"}).code, kExitUsage);
    EXPECT_EQ(solve({"--instance", "8", "--solver", "nsga2", "--pop", "1"}).code, kExitUsage);
    EXPECT_EQ(solve({"--instance", "8", "--solver", "nsga2", "--pm", "half"}).code, kExitUsage);
}

TEST(Cli, SelectorsAgree) {
    const auto by_id = solve({"--instance", "8", "--format", "json"});
    ASSERT_EQ(by_id.code, kExitOk) << by_id.err;
    EXPECT_EQ(solve({"--metrics", "network,power", "--format", "json"}).out, by_id.out);
    EXPECT_EQ(solve({"--context", "travel-abroad", "--format", "json"}).out, by_id.out);
    EXPECT_EQ(decode_front_json(by_id.out).instance, 8);
}

TEST(Cli, CsvAndJsonDescribeSameFront) {
    const auto csv = solve({"--instance", "22"});
    const auto json = solve({"--instance", "22", "--format", "json"});
    ASSERT_EQ(csv.code, kExitOk);
    EXPECT_EQ(encode_front_json(decode_front_csv(csv.out)), json.out);
    EXPECT_EQ(decode_front_json(json.out).battery, std::nullopt);  // no power objective shown as battery
    const auto table = solve({"--instance", "22", "--format", "table"});
    EXPECT_NE(table.out.find("Pareto optimal solutions"), std::string::npos);
}

TEST(Cli, BatteryDisplayAndRawPower) {
    const auto shown = decode_front_json(solve({"--instance", "8", "--format", "json"}).out);
    ASSERT_TRUE(shown.battery);
    const auto raw = decode_front_json(solve({"--instance", "8", "--format", "json", "--raw-power"}).out);
    EXPECT_FALSE(raw.battery);
    ASSERT_EQ(raw.rows.size(), shown.rows.size());
    EXPECT_EQ(raw.rows[0].display[0], raw.rows[0].objectives[0]);
}

TEST(Cli, OutFileMatchesStdout) {
    testing::TempDir dir;
    const auto path = (dir.path() / "front.json").string();
    const auto a = solve({"--instance", "10", "--format", "json"});
    EXPECT_EQ(solve({"--instance", "10", "--format", "json", "--out", path}).code, kExitOk);
    EXPECT_EQ(read_text_file(path), a.out);
}

TEST(Cli, Nsga2SeedAndTrace) {
    testing::TempDir dir;
    const auto trace = (dir.path() / "trace.jsonl").string();
    const std::vector<std::string> args{"--instance", "27", "--solver", "nsga2", "--seed", "5", "--pop", "20",
                                        "--gens", "10", "--pm", "1/N", "--format", "json"};
    auto with_trace = args;
    with_trace.insert(with_trace.end(), {"--trace", trace});
    const auto a = solve(with_trace);
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(solve(args).out, a.out);
    const auto table = decode_front_json(a.out);
    ASSERT_TRUE(table.nsga2);
    EXPECT_DOUBLE_EQ(table.nsga2->mutation_prob, 1.0 / 7);
    std::istringstream lines(read_text_file(trace));
    std::size_t n = 0;
    for (std::string line; std::getline(lines, line); ++n) EXPECT_TRUE(Json::parse(line).contains("generation"));
    EXPECT_EQ(n, 11u);
}

TEST(Cli, Filters) {
    const auto all = decode_front_json(solve({"--instance", "8", "--format", "json"}).out);
    const auto some = decode_front_json(
        solve({"--instance", "8", "--format", "json", "--filter", "network:tradeoff<=50"}).out);
    EXPECT_LE(some.rows.size(), all.rows.size());
    EXPECT_EQ(some.empty_selection, std::optional<bool>(some.rows.empty()));
    const auto none =
        decode_front_json(solve({"--instance", "8", "--format", "json", "--filter", "network<=-1"}).out);
    EXPECT_EQ(none.empty_selection, std::optional<bool>(true));
    EXPECT_EQ(solve({"--instance", "8", "--filter", "cpu<=1"}).code, kExitUsage);
    EXPECT_EQ(solve({"--instance", "8", "--filter", "network<1"}).code, kExitUsage);
}

TEST(Cli, DataAndCapacityErrors) {
    EXPECT_EQ(run({"solve", "--catalog", "/nonexistent.csv", "--instance", "8"}).code, kExitData);
    testing::TempDir dir;
    const auto bad = dir.write("bad.csv", std::string(kCatalogHeader) + "\na,x,9,1,1,1,1\n");
    const auto r = run({"solve", "--catalog", bad.string(), "--instance", "8"});
    EXPECT_EQ(r.code, kExitData);
    EXPECT_NE(r.err.find("row 2"), std::string::npos);

    ::setenv("ASP_ENUM_CAP", "10", 1);
    const auto capped = solve({"--instance", "31"});
    ::unsetenv("ASP_ENUM_CAP");
    EXPECT_EQ(capped.code, kExitCapacity);
    EXPECT_EQ(solve({"--instance", "31", "--format", "json"}).code, kExitOk);
}

TEST(Cli, OtherSubcommands) {
    const auto contexts = run({"contexts", "--format", "json"});
    ASSERT_EQ(contexts.code, kExitOk);
    EXPECT_EQ(Json::parse(contexts.out).size(), 4u);
    EXPECT_EQ(run({"contexts"}).code, kExitOk);

    const auto reduce = run({"reduce", "--catalog", kCatalog, "--instance", "8", "--format", "json"});
    ASSERT_EQ(reduce.code, kExitOk) << reduce.err;
    EXPECT_EQ(Json::parse(reduce.out)["space_before"], "2187");

    const auto compare = run({"compare", "--catalog", kCatalog, "--instance", "8", "--format", "json"});
    ASSERT_EQ(compare.code, kExitOk) << compare.err;
    EXPECT_EQ(Json::parse(compare.out)["picks"].size(), 2u);
    EXPECT_EQ(run({"compare", "--catalog", kCatalog, "--instance", "8", "--solution", "nope"}).code, kExitData);

    const auto cat = load_catalog(kCatalog);
    const auto& first = cat.category(0);
    const std::string row = "fresh," + first.id + ",4,1,10,50,0.5";
    const auto reference = run({"reference", "--catalog", kCatalog, "--new-app", row, "--format", "json"});
    ASSERT_EQ(reference.code, kExitOk) << reference.err;
    EXPECT_TRUE(Json::parse(reference.out).contains("position"));
    EXPECT_EQ(run({"reference", "--catalog", kCatalog}).code, kExitOk);
    EXPECT_EQ(run({"reference", "--catalog", kCatalog, "--new-app", "x,unknown,4,1,1,1,1"}).code, kExitData);
}

}  // namespace
}  // namespace apoa
