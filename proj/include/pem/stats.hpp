#pragma once

#include <span>
#include <string>
#include <vector>

#include "pem/featmat.hpp"

namespace pem {

enum class TestVariant { PooledUnpaired, Paired };

struct TestResult {
    double t = 0.0;
    double df = 0.0;
    double p = 1.0; // two-sided
    bool degenerate = false;
};

struct EventStats {
    std::string event_key;
    std::string description;
    std::uint32_t n_before = 0;
    std::uint32_t n_after = 0;
    std::uint64_t cohort = 0;
    double r1 = 0.0;
    double r2 = 0.0; // percent of the exposed cohort
    TestResult test;
};

// R1 = N_A / N_B (or N_A when N_B = 0); R2 = 100 * N_A / N.
std::pair<double, double> ratios(std::uint64_t n_before, std::uint64_t n_after,
                                 std::uint64_t cohort);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

// Two-sided Student's t tail: p = I_{df/(df+t^2)}(df/2, 1/2).
double two_sided_p(double t, double df);

TestResult students_t(std::span<const double> x, std::span<const double> y,
                      TestVariant variant);

// One test per universe column on the grouped before/after matrices, paired
// with the patient-level counts for the ratio statistics.
std::vector<EventStats> per_event_tests(const GroupedMatrix& before_groups,
                                        const GroupedMatrix& after_groups,
                                        const std::vector<std::uint32_t>& counts_before,
                                        const std::vector<std::uint32_t>& counts_after,
                                        const EventUniverse& universe, std::uint64_t cohort,
                                        TestVariant variant);

} // namespace pem
