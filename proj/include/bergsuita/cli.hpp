#pragma once

// Command-line front end. Exit codes: 0 success, 1 validation error (bad
// flags or domain spec), 2 numerical failure or failed acceptance run.

#include <complex>
#include <ostream>
#include <string>
#include <vector>

namespace bergsuita::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "0.3", "-0.2i", "0.3+0.2i", "1e-3-4i" or "(0.3,0.2)"; "sqrt" means
/// sqrt(inner_radius) and is only valid when inner_radius > 0.
std::complex<double> parse_complex(const std::string& text, double inner_radius = 0.0);
/// Comma-separated complex literals.
std::vector<std::complex<double>> parse_point(const std::string& text, double inner_radius = 0.0);
/// "a..b" (inclusive integer range) or a comma list.
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace bergsuita::cli
