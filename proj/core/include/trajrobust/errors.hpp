#pragma once

#include <stdexcept>
#include <string>

namespace trajrobust {

/// Malformed input file; carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

/// Not enough samples to perform the requested operation.
class InsufficientDataError : public std::runtime_error {
 public:
  explicit InsufficientDataError(const std::string& message)
      : std::runtime_error(message) {}
};

/// Trajectories do not share enough associated samples for a metric.
class InsufficientOverlapError : public std::runtime_error {
 public:
  InsufficientOverlapError(const std::string& message, std::size_t pair_count)
      : std::runtime_error(message + " (" + std::to_string(pair_count) +
                           " pairs)"),
        pair_count_(pair_count) {}

  std::size_t pair_count() const { return pair_count_; }

 private:
  std::size_t pair_count_;
};

/// Point geometry too degenerate for alignment (fewer than 3 pairs or
/// rank-deficient covariance).
class DegenerateGeometryError : public std::runtime_error {
 public:
  explicit DegenerateGeometryError(const std::string& message)
      : std::runtime_error(message) {}
};

/// Query time outside the valid span of a spline; carries the span.
class OutOfSpanError : public std::runtime_error {
 public:
  OutOfSpanError(double t, double span_begin, double span_end)
      : std::runtime_error("t=" + std::to_string(t) +
                           " outside valid span [" +
                           std::to_string(span_begin) + ", " +
                           std::to_string(span_end) + "]"),
        t_(t),
        span_begin_(span_begin),
        span_end_(span_end) {}

  double t() const { return t_; }
  double span_begin() const { return span_begin_; }
  double span_end() const { return span_end_; }

 private:
  double t_;
  double span_begin_;
  double span_end_;
};

}  // namespace trajrobust
