#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace asymcap {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Short machine-readable name used in reports ("NotAGroup", ...).
  virtual const char* kind() const noexcept = 0;
};

/// Errors that mean "the input is well-formed but violates a mathematical
/// contract". The CLI maps these to exit status 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NotAGroup : public ValidationError {
 public:
  // Unused slots of the triple are -1.
  NotAGroup(const std::string& reason, std::array<int, 3> triple)
      : ValidationError("not a group: " + reason + " at (" + std::to_string(triple[0]) + ", " +
                        std::to_string(triple[1]) + ", " + std::to_string(triple[2]) + ")"),
        reason_(reason),
        triple_(triple) {}
  const char* kind() const noexcept override { return "NotAGroup"; }
  const std::string& reason() const { return reason_; }
  std::array<int, 3> triple() const { return triple_; }

 private:
  std::string reason_;
  std::array<int, 3> triple_;
};

class NotUnitary : public ValidationError {
 public:
  NotUnitary(int element, double residual)
      : ValidationError("matrix of element " + std::to_string(element) +
                        " is not unitary (residual " + std::to_string(residual) + ")"),
        element_(element),
        residual_(residual) {}
  const char* kind() const noexcept override { return "NotUnitary"; }
  int element() const { return element_; }
  double residual() const { return residual_; }

 private:
  int element_;
  double residual_;
};

class NotHomomorphism : public ValidationError {
 public:
  NotHomomorphism(int g, int h, double residual)
      : ValidationError("U_g U_h != U_gh for g=" + std::to_string(g) + ", h=" + std::to_string(h) +
                        " (residual " + std::to_string(residual) + ")"),
        g_(g),
        h_(h),
        residual_(residual) {}
  const char* kind() const noexcept override { return "NotHomomorphism"; }
  int g() const { return g_; }
  int h() const { return h_; }
  double residual() const { return residual_; }

 private:
  int g_;
  int h_;
  double residual_;
};

class DimensionCapExceeded : public ValidationError {
 public:
  DimensionCapExceeded(const std::string& what, long value, long cap)
      : ValidationError(what + " " + std::to_string(value) + " exceeds cap " + std::to_string(cap)),
        value_(value),
        cap_(cap) {}
  const char* kind() const noexcept override { return "DimensionCapExceeded"; }
  long value() const { return value_; }
  long cap() const { return cap_; }

 private:
  long value_;
  long cap_;
};

class DegenerateSplit : public ValidationError {
 public:
  explicit DegenerateSplit(int attempts)
      : ValidationError("commutant eigenvalue clusters stayed degenerate after " +
                        std::to_string(attempts) + " attempts"),
        attempts_(attempts) {}
  const char* kind() const noexcept override { return "DegenerateSplit"; }
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

class ResidualTooLarge : public ValidationError {
 public:
  ResidualTooLarge(double actual, double tol)
      : ValidationError("decomposition residual " + std::to_string(actual) + " exceeds " +
                        std::to_string(tol)),
        actual_(actual) {}
  const char* kind() const noexcept override { return "ResidualTooLarge"; }
  double actual() const { return actual_; }

 private:
  double actual_;
};

class InvalidState : public ValidationError {
 public:
  using ValidationError::ValidationError;
  const char* kind() const noexcept override { return "InvalidState"; }
};

class NotSymmetric : public ValidationError {
 public:
  explicit NotSymmetric(double residual)
      : ValidationError("state is not symmetric (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  const char* kind() const noexcept override { return "NotSymmetric"; }
  double residual() const { return residual_; }

 private:
  double residual_;
};

class NotBlockForm : public ValidationError {
 public:
  NotBlockForm(int block, double residual)
      : ValidationError("block " + std::to_string(block) + " is not of the form pi (x) sigma (residual " +
                        std::to_string(residual) + ")"),
        block_(block),
        residual_(residual) {}
  const char* kind() const noexcept override { return "NotBlockForm"; }
  int block() const { return block_; }
  double residual() const { return residual_; }

 private:
  int block_;
  double residual_;
};

class SupportMismatch : public ValidationError {
 public:
  explicit SupportMismatch(int index)
      : ValidationError("q vanishes where p does not, at index " + std::to_string(index)),
        index_(index) {}
  const char* kind() const noexcept override { return "SupportMismatch"; }
  int index() const { return index_; }

 private:
  int index_;
};

class ZeroBlockMass : public ValidationError {
 public:
  explicit ZeroBlockMass(int block)
      : ValidationError("block " + std::to_string(block) + " carries no probability mass"), block_(block) {}
  const char* kind() const noexcept override { return "ZeroBlockMass"; }
  int block() const { return block_; }

 private:
  int block_;
};

class BlockNotSquare : public ValidationError {
 public:
  BlockNotSquare(int block, int d_left, int d_right)
      : ValidationError("block " + std::to_string(block) + " has d_L=" + std::to_string(d_left) +
                        " != d_R=" + std::to_string(d_right)),
        block_(block) {}
  const char* kind() const noexcept override { return "BlockNotSquare"; }
  int block() const { return block_; }

 private:
  int block_;
};

class SupportsOverlap : public ValidationError {
 public:
  SupportsOverlap(int i, int j, double overlap)
      : ValidationError("supports of codebook states " + std::to_string(i) + " and " + std::to_string(j) +
                        " overlap (" + std::to_string(overlap) + ")"),
        pair_{i, j},
        overlap_(overlap) {}
  const char* kind() const noexcept override { return "SupportsOverlap"; }
  std::array<int, 2> pair() const { return pair_; }
  double overlap() const { return overlap_; }

 private:
  std::array<int, 2> pair_;
  double overlap_;
};

/// Input could not be parsed or lacks a required field. Exit status 1.
class MalformedInput : public Error {
 public:
  MalformedInput(const std::string& field, const std::string& detail)
      : Error("malformed input at '" + field + "': " + detail), field_(field) {}
  const char* kind() const noexcept override { return "MalformedInput"; }
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class UnknownCatalogId : public Error {
 public:
  explicit UnknownCatalogId(const std::string& id) : Error("unknown catalog id '" + id + "'"), id_(id) {}
  const char* kind() const noexcept override { return "UnknownCatalogId"; }
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

}  // namespace asymcap
