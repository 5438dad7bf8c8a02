#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace apoa::testdata {

// Instance id -> which of (power, cpu, memory, network, rating) it optimizes.
struct InstanceRow {
    int id;
    std::array<bool, 5> uses;
};

inline const std::vector<InstanceRow> kInstanceRows = {
    {1, {1, 0, 0, 0, 0}},  {2, {0, 1, 0, 0, 0}},  {3, {0, 0, 1, 0, 0}},  {4, {0, 0, 0, 1, 0}},
    {5, {0, 0, 0, 0, 1}},  {6, {1, 1, 0, 0, 0}},  {7, {1, 0, 1, 0, 0}},  {8, {1, 0, 0, 1, 0}},
    {9, {1, 0, 0, 0, 1}},  {10, {0, 1, 1, 0, 0}}, {11, {0, 1, 0, 1, 0}}, {12, {0, 1, 0, 0, 1}},
    {13, {0, 0, 1, 1, 0}}, {14, {0, 0, 1, 0, 1}}, {15, {0, 0, 0, 1, 1}}, {16, {1, 1, 1, 0, 0}},
    {17, {1, 1, 0, 1, 0}}, {18, {1, 1, 0, 0, 1}}, {19, {1, 0, 1, 1, 0}}, {20, {1, 0, 1, 0, 1}},
    {21, {1, 0, 0, 1, 1}}, {22, {0, 1, 1, 1, 0}}, {23, {0, 1, 1, 0, 1}}, {24, {0, 1, 0, 1, 1}},
    {25, {0, 0, 1, 1, 1}}, {26, {1, 1, 1, 1, 0}}, {27, {1, 1, 1, 0, 1}}, {28, {1, 1, 0, 1, 1}},
    {29, {1, 0, 1, 1, 1}}, {30, {0, 1, 1, 1, 1}}, {31, {1, 1, 1, 1, 1}},
};

struct SurvivorCase {
    int instance;
    std::vector<std::size_t> survivors;
    std::uint64_t space;
};

inline const std::vector<SurvivorCase> kSurvivorCases = {
    {31, {9, 11, 11, 13, 6, 13, 14}, 15'459'444},
    {8, {1, 5, 1, 3, 1, 2, 4}, 120},
    {10, {2, 4, 2, 4, 1, 1, 5}, 320},
};

// Printed two-objective fronts: two objective values and two trade-offs per row.
struct PrintedRow {
    double first;
    double second;
    double tradeoff_first;
    double tradeoff_second;
};

// Battery life (h) and network (MB), travel-abroad context.
inline const std::vector<PrintedRow> kTravelAbroadFront = {
    {3.38, 0.31, 0.00, 83.88},  {3.36, 0.25, 0.71, 64.30},  {3.36, 0.23, 0.83, 57.54}, {3.34, 0.22, 1.36, 54.60},
    {3.34, 0.18, 1.36, 42.70},  {3.33, 0.17, 1.53, 37.96},  {3.32, 0.17, 1.81, 37.45}, {3.31, 0.16, 2.05, 35.02},
    {3.31, 0.12, 2.05, 23.12},  {3.31, 0.12, 2.33, 22.61},  {3.29, 0.12, 2.69, 22.35}, {3.26, 0.11, 3.61, 20.24},
    {3.25, 0.11, 3.89, 19.72},  {3.24, 0.11, 4.23, 19.47},  {3.18, 0.11, 5.92, 19.42}, {3.14, 0.11, 7.10, 18.54},
    {3.14, 0.11, 7.35, 18.03},  {3.13, 0.10, 7.56, 15.60},  {3.13, 0.06, 7.56, 3.70},  {3.12, 0.06, 7.81, 3.18},
    {3.11, 0.06, 8.13, 2.92},   {3.08, 0.05, 8.96, 0.82},   {3.07, 0.05, 9.20, 0.30},  {3.06, 0.05, 9.50, 0.04},
    {3.03, 0.05, 10.44, 0.04},  {3.01, 0.05, 11.02, 0.00},  {2.98, 0.05, 11.92, 0.00},
};

// CPU (%) and memory (MB), old-devices context.
inline const std::vector<PrintedRow> kOldDevicesFront = {
    {0.53, 63.74, 0.00, 60.19},  {0.53, 62.79, 0.04, 58.70},  {0.54, 55.67, 0.15, 47.53},  {0.56, 52.89, 0.81, 43.17},
    {0.59, 52.63, 1.71, 42.75},  {0.61, 51.34, 2.16, 40.73},  {0.63, 48.56, 2.81, 36.37},  {0.66, 48.29, 3.72, 35.95},
    {0.73, 47.57, 5.58, 34.82},  {0.76, 47.30, 6.48, 34.40},  {0.94, 45.50, 11.63, 31.57}, {0.97, 45.23, 12.54, 31.15},
    {1.03, 44.18, 14.05, 29.50}, {1.06, 43.91, 14.95, 29.08}, {1.07, 42.63, 15.39, 27.06}, {1.10, 39.85, 16.05, 22.70},
    {1.13, 39.58, 16.96, 22.28}, {1.51, 37.93, 27.65, 19.70}, {1.54, 37.67, 28.56, 19.28}, {1.61, 36.75, 30.66, 17.85},
    {1.64, 36.49, 31.57, 17.43}, {2.02, 34.84, 42.26, 14.85}, {2.05, 34.57, 43.16, 14.43}, {2.41, 32.25, 53.39, 10.77},
    {2.44, 29.46, 54.05, 6.41},  {2.47, 29.20, 54.95, 5.99},  {2.93, 29.15, 68.00, 5.92},  {2.95, 26.37, 68.66, 1.56},
    {2.98, 26.10, 69.56, 1.14},  {3.49, 25.64, 84.06, 0.42},  {3.53, 25.38, 84.96, 0.00},
};

}  // namespace apoa::testdata
