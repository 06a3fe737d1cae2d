#pragma once

#include <functional>
#include <vector>

namespace ssn {

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_distance(std::vector<double> a, std::vector<double> b);

/// One-sample statistic sup |F_n - F|.
double ks_to_cdf(std::vector<double> samples, const std::function<double(double)>& cdf);

double mean(const std::vector<double>& xs);
double standard_error(const std::vector<double>& xs);

/// Sum of absolute differences of two histograms of equal length.
double l1_distance(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace ssn
