#pragma once

#include <string>
#include <vector>

#include "imploder/polynomial.hpp"

namespace imploder {

// Command-line entry point. Exit codes: 0 success, 1 usage error,
// 2 numeric failure (machine-readable error JSON on stderr).
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

// Complex literal of the form "a", "bi" or "a+bi" / "a-bi", no spaces.
Complex parse_complex(const std::string& text);

// Comma-separated complex literals, ascending degree order.
PolynomialMap parse_poly(const std::string& text);

}  // namespace imploder
