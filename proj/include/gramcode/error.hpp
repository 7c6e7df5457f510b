#ifndef GRAMCODE_ERROR_HPP
#define GRAMCODE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gramcode {

// Error taxonomy shared by the library and the CLI exit-code mapping:
// validation -> 2, budget -> 3, mismatch -> 4, internal -> 1.
enum class ErrorKind { kValidation, kBudget, kMismatch, kInternal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error validation_error(const std::string& msg) {
  return Error(ErrorKind::kValidation, msg);
}
inline Error budget_error(const std::string& msg) {
  return Error(ErrorKind::kBudget, msg);
}
inline Error mismatch_error(const std::string& msg) {
  return Error(ErrorKind::kMismatch, msg);
}
inline Error internal_error(const std::string& msg) {
  return Error(ErrorKind::kInternal, msg);
}

// Configurable caps for the exhaustive machinery. Enumerations refuse with a
// budget error instead of silently truncating.
struct Budget {
  std::uint64_t max_words = 100000000;        // q^n guard for word exhaustion
  std::uint64_t max_cycles = 1000000;         // simple-cycle enumeration
  std::uint64_t max_enum_nodes = 40000000000; // lattice DFS nodes
  std::uint64_t max_pairs = 4000000000;       // pairwise distance scans
  std::uint64_t hamiltonian_node_cap = 64;    // backtracking size bound
};

}  // namespace gramcode

#endif
