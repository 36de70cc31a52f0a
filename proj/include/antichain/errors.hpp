#pragma once

#include <stdexcept>
#include <string>

namespace antichain {

// A generator was asked for something beyond its representation limits
// (e.g. PD with k > 64 exhausts the 128-bit mantissa budget).
class capability_error : public std::runtime_error {
 public:
  explicit capability_error(const std::string& what) : std::runtime_error(what) {}
};

// A memoized object was re-requested with an incompatible shape.
class contract_error : public std::logic_error {
 public:
  explicit contract_error(const std::string& what) : std::logic_error(what) {}
};

// CFTP exceeded its backward-time cap without coalescing.
class non_coalescence_error : public std::runtime_error {
 public:
  non_coalescence_error(const std::string& what, long t_reached, std::size_t blocks)
      : std::runtime_error(what), t_reached_(t_reached), blocks_materialized_(blocks) {}
  long t_reached() const { return t_reached_; }
  std::size_t blocks_materialized() const { return blocks_materialized_; }

 private:
  long t_reached_;
  std::size_t blocks_materialized_;
};

// Malformed input file (CSV/JSON); carries a line number when known.
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what, long line = -1)
      : std::runtime_error(line >= 0 ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

}  // namespace antichain
