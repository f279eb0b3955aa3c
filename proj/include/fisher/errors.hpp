#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace fisher {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input text; `line` is 1-based.
struct ParseError : Error {
  int line;
  ParseError(int line_, const std::string& msg)
      : Error("parse error at line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct EnumerationCapError : Error {
  int n_free;
  int cap;
  EnumerationCapError(int n_free_, int cap_)
      : Error("enumeration cap exceeded: " + std::to_string(n_free_) + " free vertices > cap " +
              std::to_string(cap_)),
        n_free(n_free_),
        cap(cap_) {}
};

struct NodeCapError : Error {
  long cap;
  explicit NodeCapError(long cap_)
      : Error("walk-tree node cap exceeded (cap " + std::to_string(cap_) + ")"), cap(cap_) {}
};

/// A map was evaluated at a point where its denominator vanishes.
/// `node` identifies the tree node for recurrence evaluations, -1 otherwise.
struct PoleError : Error {
  std::complex<double> at;
  long node;
  explicit PoleError(std::complex<double> at_, long node_ = -1)
      : Error(node_ >= 0 ? "pole encountered at tree node " + std::to_string(node_)
                         : "pole encountered"),
        at(at_),
        node(node_) {}
};

/// A principal-branch log was requested for a value with non-positive real part.
struct BranchError : Error {
  std::complex<double> at;
  explicit BranchError(std::complex<double> at_)
      : Error("principal-branch violation: log argument has non-positive real part"), at(at_) {}
};

struct SingularityError : Error {
  using Error::Error;
};

/// The zero-free segment certificate failed (closest root at distance rho <= 1).
struct CertificateError : Error {
  double rho;
  explicit CertificateError(double rho_)
      : Error("zero-free certificate failed: rho = " + std::to_string(rho_)), rho(rho_) {}
};

}  // namespace fisher
