#pragma once

#include <stdexcept>
#include <string>

namespace latt {

/// Violated mathematical precondition (bad operand, wrong shape, wrong sign, ...).
/// The CLI maps this family to exit code 1.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// Operation required a nondegenerate form but the Gram matrix is singular.
class degenerate_lattice_error : public domain_error {
public:
    explicit degenerate_lattice_error(const std::string& what) : domain_error(what) {}
};

/// Syntactically or structurally invalid external input (JSON, catalog files).
/// The CLI maps this to exit code 2.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace latt
