// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fpsvm Authors

// Published confusion matrices and the two-decimal reports printed for them.
// Rows are true classes, columns predicted classes.

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace reference {

struct Row {
    std::string name;
    std::string precision;
    std::string recall;
    std::string f1;
    std::size_t support;
};

struct Case {
    std::string label;
    std::vector<std::string> classes;
    std::vector<std::vector<std::size_t>> counts;
    std::vector<Row> rows;  // per class, then the weighted average row
    std::string accuracy;
};

inline const std::vector<std::string> kSixClasses{"DB", "SS", "SW", "A", "I", "B"};

// Six-class scheme, training data.
inline Case six_class_train()
{
    return {"six-class training matrix",
            kSixClasses,
            {{486, 0, 0, 0, 6, 0},
             {0, 113, 0, 0, 0, 0},
             {0, 3, 675, 8, 0, 0},
             {0, 0, 12, 820, 1, 0},
             {5, 0, 0, 1, 2306, 0},
             {0, 0, 0, 0, 0, 104}},
            {{"DB", "0.99", "0.99", "0.99", 492},
             {"SS", "0.97", "1.00", "0.99", 113},
             {"SW", "0.98", "0.98", "0.98", 686},
             {"A", "0.99", "0.98", "0.99", 833},
             {"I", "1.00", "1.00", "1.00", 2312},
             {"B", "1.00", "1.00", "1.00", 104},
             {"avg", "0.99", "0.99", "0.99", 4540}},
            "0.99"};
}

// Six-class scheme, held-out data.
inline Case six_class_test()
{
    return {"six-class held-out matrix",
            kSixClasses,
            {{95, 0, 0, 0, 7, 0},
             {0, 27, 0, 0, 0, 0},
             {0, 3, 179, 8, 2, 0},
             {0, 0, 12, 180, 8, 0},
             {8, 0, 1, 7, 577, 0},
             {0, 0, 0, 0, 0, 21}},
            {{"DB", "0.92", "0.93", "0.93", 102},
             {"SS", "0.90", "1.00", "0.95", 27},
             {"SW", "0.93", "0.93", "0.93", 192},
             {"A", "0.92", "0.90", "0.91", 200},
             {"I", "0.97", "0.97", "0.97", 593},
             {"B", "1.00", "1.00", "1.00", 21},
             {"avg", "0.95", "0.95", "0.95", 1135}},
            "0.95"};
}

// Three-class scheme, held-out data. Only the accuracy is checked: the
// per-class table printed with it does not match this matrix.
inline Case three_class_test()
{
    return {"three-class held-out matrix",
            {"Dispersed", "Segregated", "Intermittent"},
            {{575, 9, 9}, {7, 95, 0}, {12, 1, 427}},
            {},
            "0.97"};
}

} // namespace reference
