#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "normidx/bench.hpp"
#include "normidx/csv.hpp"
#include "normidx/errors.hpp"
#include "normidx/generate.hpp"
#include "normidx/knn.hpp"
#include "normidx/norm_index.hpp"
#include "normidx/oracle.hpp"
#include "normidx/search.hpp"
#include "normidx/text.hpp"

namespace {

std::vector<double> parse_query(const std::string& text) {
    std::vector<double> query;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto end = comma == std::string::npos ? text.size() : comma;
        const auto field = normidx::trim(
            std::string_view(text).substr(start, end - start));
        const auto value = normidx::parse_double(field);
        if (!value)
            throw std::invalid_argument("--query: not a number: \"" +
                                        std::string(field) + "\"");
        query.push_back(*value);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return query;
}

void run_build(const std::string& input, bool labeled, const std::string& output) {
    const auto data = normidx::load_csv(std::filesystem::path(input), labeled);
    normidx::save_index(normidx::build_index(data), std::filesystem::path(output));
}

void run_knn(const std::string& input, bool labeled, const std::string& index_path,
             const std::string& query_text, std::size_t k) {
    const auto data = normidx::load_csv(std::filesystem::path(input), labeled);
    const auto index = normidx::load_index(std::filesystem::path(index_path), data);
    const auto query = parse_query(query_text);
    for (const auto& nb : normidx::knn_exact(index, data, query, k))
        std::cout << nb.original_index << ','
                  << normidx::to_decimal_string(nb.distance) << '\n';
}

void run_classify(const std::string& train_path, const std::string& test_path,
                  std::size_t k, bool use_oracle) {
    const auto train = normidx::load_csv(std::filesystem::path(train_path), true);
    const auto test = normidx::load_csv(std::filesystem::path(test_path), true);
    std::size_t correct = 0;
    if (use_oracle) {
        for (std::size_t i = 0; i < test.size(); ++i) {
            const auto predicted = normidx::majority_label(
                normidx::oracle_knn(train, test.row(i), k), train.labels());
            std::cout << predicted << '\n';
            if (predicted == test.label(i)) ++correct;
        }
    } else {
        const auto model = normidx::KnnModel::fit(train, k);
        for (std::size_t i = 0; i < test.size(); ++i) {
            const auto predicted = model.predict(test.row(i), k);
            std::cout << predicted << '\n';
            if (predicted == test.label(i)) ++correct;
        }
    }
    std::cout << "accuracy="
              << normidx::to_decimal_string(static_cast<double>(correct) /
                                            static_cast<double>(test.size()))
              << '\n';
}

void run_cluster(const std::string& input, bool labeled, int k_min, int k_max,
                 std::uint64_t seed) {
    const auto data = normidx::load_csv(std::filesystem::path(input), labeled);
    const auto report = normidx::cluster_report(data, k_min, k_max, seed);
    std::cout << normidx::cluster_report_to_csv(report);
    std::cout << "seed_count=" << report.seed_count << '\n'
              << "k_opt_nnsa=" << report.k_opt_nnsa << '\n'
              << "k_opt_random=" << report.k_opt_random << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"norm-ordered index: exact KNN search, classification, "
                 "clustering seeds, and benchmarks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "0.1.0");

    auto* build = app.add_subcommand("build", "Build a norm index from a CSV");
    std::string build_input, build_output;
    bool build_labeled = false;
    build->add_option("--input", build_input, "CSV dataset")->required();
    build->add_flag("--labeled", build_labeled, "last CSV column is a label");
    build->add_option("--output", build_output, "index file to write")->required();

    auto* knn = app.add_subcommand("knn", "Exact k nearest neighbors of a query");
    std::string knn_input, knn_index, knn_query;
    bool knn_labeled = false;
    std::size_t knn_k = 0;
    knn->add_option("--input", knn_input, "CSV dataset")->required();
    knn->add_option("--index", knn_index, "index built from the same CSV")
        ->required();
    knn->add_option("--query", knn_query, "comma-separated coordinates")
        ->required();
    knn->add_option("--k", knn_k, "neighbor count")->required();
    knn->add_flag("--labeled", knn_labeled, "last CSV column is a label");

    auto* classify = app.add_subcommand(
        "classify", "KNN-classify a labeled test CSV against a labeled train CSV");
    std::string cls_train, cls_test;
    std::size_t cls_k = 0;
    bool cls_oracle = false;
    classify->add_option("--train", cls_train, "labeled training CSV")->required();
    classify->add_option("--test", cls_test, "labeled test CSV")->required();
    classify->add_option("--k", cls_k, "neighbor count")->required();
    classify->add_flag("--oracle", cls_oracle,
                       "use the exhaustive scan instead of the index");

    auto* cluster = app.add_subcommand(
        "cluster", "WCSS-vs-k report for band-seeded and random-seeded k-means");
    std::string clu_input;
    bool clu_labeled = false;
    int clu_k_min = 0, clu_k_max = 0;
    std::uint64_t clu_seed = 42;
    cluster->add_option("--input", clu_input, "CSV dataset")->required();
    cluster->add_flag("--labeled", clu_labeled, "last CSV column is a label");
    cluster->add_option("--k-min", clu_k_min, "smallest k")->required();
    cluster->add_option("--k-max", clu_k_max, "largest k")->required();
    cluster->add_option("--seed", clu_seed, "seed for the random arm");

    auto* bench = app.add_subcommand("bench", "Timing sweeps (CSV on stdout)");
    bench->require_subcommand(1);

    auto* bench_dims = bench->add_subcommand(
        "dims", "Index build time across dimension counts at fixed n");
    int bd_reps = 0;
    std::uint64_t bd_seed = 42;
    std::size_t bd_n = 100000;
    std::vector<std::size_t> bd_dims{10, 50, 100, 200};
    bench_dims->add_option("--reps", bd_reps, "timed repetitions")->required();
    bench_dims->add_option("--seed", bd_seed, "data generation seed");
    bench_dims->add_option("--n", bd_n, "rows per dataset");
    bench_dims->add_option("--dims", bd_dims, "dimension counts")->delimiter(',');

    auto* bench_size = bench->add_subcommand(
        "size", "Index build time across dataset sizes at fixed d");
    int bs_reps = 0;
    std::uint64_t bs_seed = 42;
    std::size_t bs_d = 200;
    std::vector<std::size_t> bs_sizes{10000, 100000};
    bench_size->add_option("--reps", bs_reps, "timed repetitions")->required();
    bench_size->add_option("--seed", bs_seed, "data generation seed");
    bench_size->add_option("--d", bs_d, "coordinates per row");
    bench_size->add_option("--sizes", bs_sizes, "row counts")->delimiter(',');

    auto* bench_knn_cmd = bench->add_subcommand(
        "knn", "Indexed vs exhaustive classification time on a labeled CSV");
    int bk_reps = 0, bk_threads = 1;
    std::uint64_t bk_seed = 42;
    std::string bk_input;
    std::vector<std::size_t> bk_ks{1, 3, 5, 7};
    bench_knn_cmd->add_option("--reps", bk_reps, "timed repetitions")->required();
    bench_knn_cmd->add_option("--seed", bk_seed, "train/test split seed");
    bench_knn_cmd->add_option("--input", bk_input, "labeled CSV")->required();
    bench_knn_cmd->add_option("--ks", bk_ks, "neighbor counts")->delimiter(',');
    bench_knn_cmd->add_option("--threads", bk_threads,
                              "workers for the timed queries");

    build->callback([&] { run_build(build_input, build_labeled, build_output); });
    knn->callback(
        [&] { run_knn(knn_input, knn_labeled, knn_index, knn_query, knn_k); });
    classify->callback([&] { run_classify(cls_train, cls_test, cls_k, cls_oracle); });
    cluster->callback(
        [&] { run_cluster(clu_input, clu_labeled, clu_k_min, clu_k_max, clu_seed); });
    bench_dims->callback([&] {
        std::cout << normidx::bench_to_csv(
            normidx::bench_build_dims(bd_n, bd_dims, bd_reps, bd_seed));
    });
    bench_size->callback([&] {
        std::cout << normidx::bench_to_csv(
            normidx::bench_build_sizes(bs_sizes, bs_d, bs_reps, bs_seed));
    });
    bench_knn_cmd->callback([&] {
        const auto data = normidx::load_csv(std::filesystem::path(bk_input), true);
        std::cout << normidx::bench_to_csv(
            normidx::bench_knn(data, bk_ks, bk_reps, bk_seed, bk_threads));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const normidx::ParseError& e) {
        std::cerr << "normidx: " << e.what() << '\n';
        return 3;
    } catch (const normidx::BindingError& e) {
        std::cerr << "normidx: " << e.what() << '\n';
        return 3;
    } catch (const std::logic_error& e) {  // invalid_argument, domain_error, ...
        std::cerr << "normidx: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "normidx: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
