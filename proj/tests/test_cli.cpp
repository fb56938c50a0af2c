#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "normidx/csv.hpp"
#include "normidx/generate.hpp"
#include "normidx/norm_index.hpp"
#include "normidx/search.hpp"
#include "normidx/text.hpp"

using namespace normidx;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

std::filesystem::path scratch_dir() {
    static const std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() / "normidx_cli_test";
        std::filesystem::remove_all(d);
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

std::string cli_binary() {
    if (const char* env = std::getenv("NORMIDX_CLI")) return env;
    return NORMIDX_CLI_PATH;
}

RunResult run_cli(const std::string& args) {
    static int call = 0;
    const auto out_path = scratch_dir() / ("out" + std::to_string(call++) + ".txt");
    const std::string command =
        "\"" + cli_binary() + "\" " + args + " >" + out_path.string() + " 2>&1";
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    result.output = buffer.str();
    return result;
}

std::filesystem::path write_file(const std::string& name, const std::string& text) {
    const auto path = scratch_dir() / name;
    std::ofstream out(path);
    out << text;
    return path;
}

std::string dataset_to_csv(const Dataset& data) {
    std::string text;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto row = data.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) text += ',';
            text += to_decimal_string(row[j]);
        }
        if (data.has_labels()) {
            text += ',';
            text += data.label(i);
        }
        text += '\n';
    }
    return text;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::string data_dir() { return NORMIDX_DATA_DIR; }

}  // namespace

TEST_CASE("help and usage errors") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("").exit_code == 2);                       // subcommand required
    CHECK(run_cli("build --input only.csv").exit_code == 2); // missing --output
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("bench --reps 3").exit_code == 2);         // bench needs a mode
}

TEST_CASE("build then knn round-trips through the library's own answers") {
    const auto csv_path = write_file("tiny.csv", "1\n2\n3\n10\n");
    const auto index_path = scratch_dir() / "tiny.nidx";

    const auto built = run_cli("build --input " + csv_path.string() +
                               " --output " + index_path.string());
    REQUIRE(built.exit_code == 0);

    const auto data = load_csv(csv_path, false);
    const auto index = load_index(index_path, data);
    const std::vector<double> query{2.4};
    std::string expected;
    for (const auto& nb : knn_exact(index, data, query, 2))
        expected += std::to_string(nb.original_index) + "," +
                    to_decimal_string(nb.distance) + "\n";

    const auto ran = run_cli("knn --input " + csv_path.string() + " --index " +
                             index_path.string() + " --query 2.4 --k 2");
    CHECK(ran.exit_code == 0);
    CHECK(ran.output == expected);
}

TEST_CASE("build --labeled works against the vendored iris") {
    const auto index_path = scratch_dir() / "iris.nidx";
    const auto built = run_cli("build --input " + data_dir() +
                               "/iris.csv --labeled --output " +
                               index_path.string());
    REQUIRE(built.exit_code == 0);
    std::ifstream in(index_path);
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("#normindex v1 n=150 d=4 hash=", 0) == 0);

    const auto searched = run_cli("knn --input " + data_dir() +
                                  "/iris.csv --labeled --index " +
                                  index_path.string() +
                                  " --query 5.1,3.5,1.4,0.2 --k 1");
    CHECK(searched.exit_code == 0);
    CHECK(lines_of(searched.output).front() == "0,0");
}

TEST_CASE("mismatched index is a data error (exit 3)") {
    const auto a = write_file("a.csv", "1\n2\n3\n");
    const auto b = write_file("b.csv", "4\n5\n6\n");
    const auto index_path = scratch_dir() / "a.nidx";
    REQUIRE(run_cli("build --input " + a.string() + " --output " +
                    index_path.string()).exit_code == 0);
    const auto crossed = run_cli("knn --input " + b.string() + " --index " +
                                 index_path.string() + " --query 1 --k 1");
    CHECK(crossed.exit_code == 3);
}

TEST_CASE("bad inputs map to the documented exit codes") {
    const auto csv_path = write_file("ok.csv", "1\n2\n");
    const auto index_path = scratch_dir() / "ok.nidx";
    REQUIRE(run_cli("build --input " + csv_path.string() + " --output " +
                    index_path.string()).exit_code == 0);

    // Usage errors (2): bad query text, k out of range.
    CHECK(run_cli("knn --input " + csv_path.string() + " --index " +
                  index_path.string() + " --query abc --k 1").exit_code == 2);
    CHECK(run_cli("knn --input " + csv_path.string() + " --index " +
                  index_path.string() + " --query 1.0 --k 0").exit_code == 2);
    CHECK(run_cli("knn --input " + csv_path.string() + " --index " +
                  index_path.string() + " --query 1.0 --k 5").exit_code == 2);

    // Data errors (3): missing file, ragged CSV, malformed index.
    CHECK(run_cli("build --input /nonexistent.csv --output x.nidx").exit_code == 3);
    const auto ragged = write_file("ragged.csv", "1,2\n3\n");
    CHECK(run_cli("build --input " + ragged.string() + " --output " +
                  (scratch_dir() / "r.nidx").string()).exit_code == 3);
    const auto broken = write_file("broken.nidx", "not an index\n");
    CHECK(run_cli("knn --input " + csv_path.string() + " --index " +
                  broken.string() + " --query 1.0 --k 1").exit_code == 3);
}

TEST_CASE("classify emits per-row predictions and an accuracy line") {
    const auto data = generate_blobs({{0.0, 0.0}, {100.0, 100.0}}, 100, 1.0, 6);
    const auto [train, test] = stratified_split(data, 0.2, 11);
    const auto train_path = write_file("train.csv", dataset_to_csv(train));
    const auto test_path = write_file("test.csv", dataset_to_csv(test));

    const auto indexed = run_cli("classify --train " + train_path.string() +
                                 " --test " + test_path.string() + " --k 3");
    REQUIRE(indexed.exit_code == 0);
    const auto lines = lines_of(indexed.output);
    REQUIRE(lines.size() == test.size() + 1);
    for (std::size_t i = 0; i < test.size(); ++i)
        CHECK((lines[i] == "0" || lines[i] == "1"));
    CHECK(lines.back().rfind("accuracy=", 0) == 0);

    // Blobs this far apart classify perfectly.
    CHECK(lines.back() == "accuracy=1");

    const auto oracle = run_cli("classify --train " + train_path.string() +
                                " --test " + test_path.string() +
                                " --k 3 --oracle");
    REQUIRE(oracle.exit_code == 0);
    CHECK(oracle.output == indexed.output);
}

TEST_CASE("cluster emits the wcss table and summary lines") {
    const auto data = generate_blobs(80, 2, 3, 1.0, 5);
    const auto path = write_file("clu.csv", dataset_to_csv(data));
    const auto ran = run_cli("cluster --input " + path.string() +
                             " --labeled --k-min 1 --k-max 5 --seed 42");
    REQUIRE(ran.exit_code == 0);
    const auto lines = lines_of(ran.output);
    REQUIRE(lines.size() >= 5);
    CHECK(lines.front() == "k,arm,wcss");
    const auto n = lines.size();
    CHECK(lines[n - 3].rfind("seed_count=", 0) == 0);
    CHECK(lines[n - 2].rfind("k_opt_nnsa=", 0) == 0);
    CHECK(lines[n - 1].rfind("k_opt_random=", 0) == 0);

    // Deterministic under a fixed seed.
    const auto again = run_cli("cluster --input " + path.string() +
                               " --labeled --k-min 1 --k-max 5 --seed 42");
    CHECK(again.output == ran.output);

    // Too-narrow k range cannot feed the elbow pick: usage error.
    CHECK(run_cli("cluster --input " + path.string() +
                  " --labeled --k-min 1 --k-max 2").exit_code == 2);
}

TEST_CASE("bench dims and size emit the timing CSV") {
    const auto dims = run_cli("bench dims --reps 2 --n 120 --dims 2,4");
    REQUIRE(dims.exit_code == 0);
    const auto dim_lines = lines_of(dims.output);
    REQUIRE(dim_lines.size() == 3);
    CHECK(dim_lines[0] == "param,variant,seconds");
    CHECK(dim_lines[1].rfind("2,nnsa,", 0) == 0);
    CHECK(dim_lines[2].rfind("4,nnsa,", 0) == 0);

    const auto sizes = run_cli("bench size --reps 2 --d 3 --sizes 50,200");
    REQUIRE(sizes.exit_code == 0);
    const auto size_lines = lines_of(sizes.output);
    REQUIRE(size_lines.size() == 3);
    CHECK(size_lines[1].rfind("50,nnsa,", 0) == 0);
    CHECK(size_lines[2].rfind("200,nnsa,", 0) == 0);

    CHECK(run_cli("bench dims --reps 0 --n 10 --dims 2").exit_code == 2);
}

TEST_CASE("bench knn emits both arms with equal accuracy per k") {
    const auto data = generate_blobs(100, 2, 2, 1.0, 8);
    const auto path = write_file("bknn.csv", dataset_to_csv(data));
    const auto ran = run_cli("bench knn --reps 1 --input " + path.string() +
                             " --ks 1,3 --threads 2");
    REQUIRE(ran.exit_code == 0);
    const auto lines = lines_of(ran.output);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "param,variant,seconds,accuracy");
    const auto accuracy_of = [](const std::string& line) {
        return line.substr(line.rfind(',') + 1);
    };
    CHECK(lines[1].rfind("1,nnsa,", 0) == 0);
    CHECK(lines[2].rfind("1,brute,", 0) == 0);
    CHECK(accuracy_of(lines[1]) == accuracy_of(lines[2]));
    CHECK(lines[3].rfind("3,nnsa,", 0) == 0);
    CHECK(lines[4].rfind("3,brute,", 0) == 0);
    CHECK(accuracy_of(lines[3]) == accuracy_of(lines[4]));
}
