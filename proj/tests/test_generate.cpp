#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "normidx/generate.hpp"

using namespace normidx;

TEST_CASE("generate_uniform: deterministic, bounded, shaped") {
    const auto a = generate_uniform(200, 7, 42, -1.5, 2.5);
    const auto b = generate_uniform(200, 7, 42, -1.5, 2.5);
    CHECK(a.content_hash() == b.content_hash());
    CHECK(a.size() == 200);
    CHECK(a.dim() == 7);
    CHECK_FALSE(a.has_labels());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (double x : a.row(i)) {
            CHECK(x >= -1.5);
            CHECK(x < 2.5);
        }
    const auto c = generate_uniform(200, 7, 43, -1.5, 2.5);
    CHECK(a.content_hash() != c.content_hash());
}

TEST_CASE("generate_uniform: validation") {
    CHECK_THROWS_AS(generate_uniform(0, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_uniform(2, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_uniform(2, 2, 1, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("generate_blobs: points hug their center and carry its id") {
    const auto data = generate_blobs({{0.0, 0.0}, {100.0, 100.0}}, 80, 1.0, 9);
    REQUIRE(data.has_labels());
    std::map<std::string, std::size_t> per_label;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto row = data.row(i);
        const std::size_t c = i % 2;
        CHECK(data.label(i) == std::to_string(c));
        ++per_label[data.label(i)];
        const double cx = c == 0 ? 0.0 : 100.0;
        const double dist = std::hypot(row[0] - cx, row[1] - cx);
        CHECK(dist < 10.0);  // ~7 sigma in 2-D, overwhelming margin
    }
    CHECK(per_label["0"] == 40);
    CHECK(per_label["1"] == 40);

    const auto again = generate_blobs({{0.0, 0.0}, {100.0, 100.0}}, 80, 1.0, 9);
    CHECK(again.content_hash() == data.content_hash());
}

TEST_CASE("generate_blobs: derived-centers overload is deterministic") {
    const auto a = generate_blobs(50, 4, 3, 1.0, 11);
    const auto b = generate_blobs(50, 4, 3, 1.0, 11);
    CHECK(a.content_hash() == b.content_hash());
    CHECK(a.size() == 50);
    CHECK(a.dim() == 4);
    const std::set<std::string> distinct(a.labels().begin(), a.labels().end());
    CHECK(distinct.size() == 3);
}

TEST_CASE("generate_blobs: validation") {
    CHECK_THROWS_AS(generate_blobs({}, 5, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_blobs({{1.0}, {1.0, 2.0}}, 5, 1.0, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_blobs({{1.0}}, 0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_blobs({{1.0}}, 5, -0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_blobs(10, 2, 0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("stratified_split: per-class proportions, order, determinism") {
    const auto data = generate_blobs(90, 2, 3, 1.0, 5);  // 30 rows per class
    const auto [train, test] = stratified_split(data, 0.2, 7);
    CHECK(train.size() == 72);
    CHECK(test.size() == 18);

    std::map<std::string, std::size_t> test_counts;
    for (std::size_t i = 0; i < test.size(); ++i) ++test_counts[test.label(i)];
    for (const auto& [label, count] : test_counts) CHECK(count == 6);

    // Determinism.
    const auto [train2, test2] = stratified_split(data, 0.2, 7);
    CHECK(train2.content_hash() == train.content_hash());
    CHECK(test2.content_hash() == test.content_hash());

    // Different seed, different draw (with overwhelming probability).
    const auto [train3, test3] = stratified_split(data, 0.2, 8);
    CHECK(test3.content_hash() != test.content_hash());

    // Disjoint and exhaustive: every original row appears exactly once.
    std::multiset<std::vector<double>> rows;
    for (std::size_t i = 0; i < data.size(); ++i)
        rows.insert({data.row(i).begin(), data.row(i).end()});
    for (std::size_t i = 0; i < train.size(); ++i) {
        const auto it = rows.find({train.row(i).begin(), train.row(i).end()});
        REQUIRE(it != rows.end());
        rows.erase(it);
    }
    for (std::size_t i = 0; i < test.size(); ++i) {
        const auto it = rows.find({test.row(i).begin(), test.row(i).end()});
        REQUIRE(it != rows.end());
        rows.erase(it);
    }
    CHECK(rows.empty());
}

TEST_CASE("stratified_split: keeps original row order within each part") {
    const auto data = generate_blobs(40, 2, 2, 1.0, 13);
    const auto [train, test] = stratified_split(data, 0.25, 3);
    // Row order preserved means: walking the original dataset and filtering
    // by membership reproduces each part. Verify via subsequence check on
    // the flattened values.
    std::size_t ti = 0, si = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto row = data.row(i);
        const auto equals = [&](const Dataset& part, std::size_t j) {
            const auto p = part.row(j);
            return std::equal(row.begin(), row.end(), p.begin(), p.end());
        };
        if (ti < train.size() && equals(train, ti)) {
            ++ti;
        } else if (si < test.size() && equals(test, si)) {
            ++si;
        }
    }
    CHECK(ti == train.size());
    CHECK(si == test.size());
}

TEST_CASE("stratified_split: validation") {
    const auto unlabeled = generate_uniform(10, 2, 1);
    CHECK_THROWS_AS(stratified_split(unlabeled, 0.2, 1), std::invalid_argument);
    const auto labeled = generate_blobs(10, 2, 2, 1.0, 1);
    CHECK_THROWS_AS(stratified_split(labeled, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(stratified_split(labeled, 1.0, 1), std::invalid_argument);
    // A fraction that rounds to zero test rows per class fails loudly.
    CHECK_THROWS_AS(stratified_split(labeled, 0.01, 1), std::invalid_argument);
}
