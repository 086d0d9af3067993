#ifndef FFQAOA_ERRORS_HPP
#define FFQAOA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ffqaoa {

// Config/schema problems: CLI maps these to exit code 1.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical faults (broken invariants, non-finite values): exit code 2.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// Thouless chart singularity: the state is orthogonal to the reference vacuum.
class singular_u_block_error : public numerical_error {
 public:
  explicit singular_u_block_error(const std::string& what) : numerical_error(what) {}
};

// Filesystem problems while persisting results: exit code 3.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}

#endif
