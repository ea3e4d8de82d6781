#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "test_util.hpp"

using nlohmann::json;
using testutil::TempDir;
using testutil::write_file;

namespace {

int run_cli(const std::string& args, const std::string& out_file = "/dev/null",
            const std::string& err_file = "/dev/null") {
    std::string cmd = std::string(SUBCHAR_CLI_PATH) + " " + args + " >" + out_file + " 2>" +
                      err_file;
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::string& path) { return json::parse(read_file(path)); }

// Two 4-cliques joined by a bridge, with a camp indicator attribute.
void write_two_camps(const TempDir& dir) {
    std::ostringstream edges;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) edges << 'n' << i << "\tn" << j << '\n';
    for (int i = 4; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j) edges << 'n' << i << "\tn" << j << '\n';
    edges << "n3\tn7\n";
    write_file(dir.file("edges.tsv"), edges.str());

    std::ostringstream attrs;
    for (int i = 0; i < 4; ++i) attrs << 'n' << i << "\tcamp_a\t1\n";
    for (int i = 4; i < 8; ++i) attrs << 'n' << i << "\tcamp_b\t1\n";
    write_file(dir.file("attrs.tsv"), attrs.str());

    write_file(dir.file("classes.tsv"), "n0\t0\nn1\t0\nn4\t1\nn5\t1\n");
}

} // namespace

TEST_CASE("help exits 0; bad usage exits 1") {
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("split --help") == 0);
    CHECK(run_cli("--no-such-flag") == 1);
    CHECK(run_cli("") == 1);             // a subcommand is required
    CHECK(run_cli("frobnicate") == 1);   // unknown subcommand
    TempDir dir;
    CHECK(run_cli("split --input " + dir.file("missing.csv") + " --out " + dir.file("o")) == 1);
}

TEST_CASE("split with the simplified algorithm on a tiny instance") {
    TempDir dir;
    write_file(dir.file("x.csv"),
               "subgraph_id,class_id,low_quality,p,q\ns1,0,0,3,4\ns2,1,0,1,1\n");
    std::string out = dir.file("part.json");
    REQUIRE(run_cli("split --input " + dir.file("x.csv") + " --algo simplified --out " + out) ==
            0);
    auto j = read_json(out);
    CHECK(j["algorithm"] == "simplified");
    CHECK(j["assignment"]["p"] == 0);
    CHECK(j["assignment"]["q"] == 0);
    CHECK(j["dropped_low_quality"] == 0);
    CHECK(j["objective_value"].get<double>() == doctest::Approx(5.0));
}

TEST_CASE("split marks low-quality rows dropped") {
    TempDir dir;
    write_file(dir.file("x.csv"),
               "subgraph_id,class_id,low_quality,p\ns1,0,0,2\ns2,1,0,1\ns3,1,1,0\n");
    std::string out = dir.file("part.json");
    REQUIRE(run_cli("split --input " + dir.file("x.csv") + " --algo greedy --out " + out) == 0);
    CHECK(read_json(out)["dropped_low_quality"] == 1);
}

TEST_CASE("brute force above the evaluation cap exits 2") {
    TempDir dir;
    std::string x = dir.file("big.csv");
    REQUIRE(run_cli("--seed 3 synth --scheme normal --d 30 --n 5 --out " + x) == 0);
    std::string err = dir.file("err.txt");
    CHECK(run_cli("split --input " + x + " --algo brute --out " + dir.file("o.json"),
                  "/dev/null", err) == 2);
    CHECK(read_file(err).rfind("error:", 0) == 0);
}

TEST_CASE("synth output is byte-identical for the same seed") {
    TempDir dir;
    std::string a = dir.file("a.csv"), b = dir.file("b.csv"), c = dir.file("c.csv");
    REQUIRE(run_cli("--seed 7 synth --scheme adversarial --P 0.4 --d 6 --n 8 --out " + a) == 0);
    REQUIRE(run_cli("--seed 7 synth --scheme adversarial --P 0.4 --d 6 --n 8 --out " + b) == 0);
    REQUIRE(run_cli("--seed 8 synth --scheme adversarial --P 0.4 --d 6 --n 8 --out " + c) == 0);
    CHECK(read_file(a) == read_file(b));
    CHECK(read_file(a) != read_file(c));
}

TEST_CASE("end-to-end pipeline on the two-camp graph") {
    TempDir dir;
    write_two_camps(dir);
    std::string base = "--edges " + dir.file("edges.tsv") + " --attrs " + dir.file("attrs.tsv");

    // extract ego communities for the seeds
    std::string subs = dir.file("subs.tsv");
    REQUIRE(run_cli("extract " + base + " --classes " + dir.file("classes.tsv") +
                    " --method ego --out " + subs) == 0);
    CHECK(read_file(subs).find("n0\t0\t") != std::string::npos);

    // focus vectors, threaded and unthreaded runs identical
    std::string x1 = dir.file("x1.csv"), x4 = dir.file("x4.csv");
    REQUIRE(run_cli("--threads 1 xvec " + base + " --subgraphs " + subs + " --out " + x1) == 0);
    REQUIRE(run_cli("--threads 4 xvec " + base + " --subgraphs " + subs + " --out " + x4) == 0);
    CHECK(read_file(x1) == read_file(x4));
    CHECK(read_file(dir.file("x1_hat.csv")) == read_file(dir.file("x4_hat.csv")));
    CHECK(read_file(x1).find("subgraph_id,class_id,low_quality,camp_a,camp_b") !=
          std::string::npos);
    CHECK(read_file(x1).find("# scale=") != std::string::npos);

    // split: camp_a should go to class 0, camp_b to class 1
    std::string part = dir.file("part.json");
    REQUIRE(run_cli("--seed 5 split --input " + x1 + " --algo swa --out " + part) == 0);
    auto pj = read_json(part);
    CHECK(pj["assignment"]["camp_a"] == 0);
    CHECK(pj["assignment"]["camp_b"] == 1);

    // rank with full fraction: planted attributes rank first with zero std
    std::string report = dir.file("rank.json"), csv = dir.file("rank.csv");
    REQUIRE(run_cli("--seed 5 rank --vectors " + x1 + " --partition " + part +
                    " --fraction 1.0 --reps 10 --out " + report + " --csv " + csv) == 0);
    auto rj = read_json(report);
    CHECK(rj["classes"][0]["attributes"][0]["attribute"] == "camp_a");
    CHECK(rj["classes"][0]["attributes"][0]["rc_std"].get<double>() == 0.0);
    CHECK(rj["classes"][1]["attributes"][0]["attribute"] == "camp_b");
    CHECK(read_file(csv).find("class,rank,attribute,rc_mean,rc_std") != std::string::npos);

    // rank output is reproducible
    std::string report2 = dir.file("rank2.json");
    REQUIRE(run_cli("--seed 5 rank --vectors " + x1 + " --partition " + part +
                    " --fraction 0.75 --reps 20 --out " + report + " --csv " + csv) == 0);
    REQUIRE(run_cli("--seed 5 rank --vectors " + x1 + " --partition " + part +
                    " --fraction 0.75 --reps 20 --out " + report2 + " --csv " + csv) == 0);
    CHECK(read_file(report) == read_file(report2));

    // metrics on the rank CSV
    std::string met = dir.file("metrics.csv");
    write_file(dir.file("node_classes.tsv"),
               "n0\t0\nn1\t0\nn2\t0\nn3\t0\nn4\t1\nn5\t1\nn6\t1\nn7\t1\n");
    REQUIRE(run_cli("metrics --attrs " + dir.file("attrs.tsv") + " --classes " +
                    dir.file("node_classes.tsv") + " --ranking " + csv + " --out " + met) == 0);
    auto met_text = read_file(met);
    CHECK(met_text.find("class,avg_class_support,avg_class_confidence,undefined_confidence") !=
          std::string::npos);
    // perfectly separating attributes give CS = CC = 1 for both classes
    CHECK(met_text.find("0,1,1,0") != std::string::npos);
    CHECK(met_text.find("1,1,1,0") != std::string::npos);
}

TEST_CASE("series consumes x_hat snapshots") {
    TempDir dir;
    std::string header = "subgraph_id,class_id,low_quality,a,b\n";
    write_file(dir.file("t1.csv"), header + "s1,0,0,0.5,-0.5\ns2,1,0,0.2,0.2\n");
    write_file(dir.file("t2.csv"), header + "s1,0,0,-0.1,0.3\ns2,1,0,0.4,0.0\n");
    std::string out = dir.file("series.csv");
    REQUIRE(run_cli("series " + dir.file("t1.csv") + " " + dir.file("t2.csv") + " --attr a --out " +
                    out) == 0);
    auto text = read_file(out);
    CHECK(text.find("snapshot,class,attribute,avg_contribution") != std::string::npos);
    CHECK(text.find("0,0,a,0.5") != std::string::npos);
    CHECK(text.find("1,0,a,-0.1") != std::string::npos); // signed values survive
    CHECK(text.find("b,") == std::string::npos);         // filter applied
}

TEST_CASE("metrics accepts the import format") {
    TempDir dir;
    write_file(dir.file("attrs.tsv"), "u\tred\t1\nv\tred\t1\nw\tblue\t1\n");
    write_file(dir.file("classes.tsv"), "u\t0\nv\t1\nw\t1\n");
    write_file(dir.file("ranking.csv"), "attribute,class_id,weight\nred,0,1\nblue,1,2\n");
    std::string out = dir.file("m.csv");
    REQUIRE(run_cli("metrics --attrs " + dir.file("attrs.tsv") + " --classes " +
                    dir.file("classes.tsv") + " --ranking " + dir.file("ranking.csv") +
                    " --out " + out) == 0);
    auto text = read_file(out);
    // class 1, attribute blue: Sup = 1/2 - 0, Cfd = 1 - 0
    CHECK(text.find("1,0.5,1,0") != std::string::npos);
}
