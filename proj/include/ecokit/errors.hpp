#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ecokit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation that needs a transaction fee was given terms without one.
class MissingFee : public Error {
 public:
  MissingFee() : Error("transaction terms carry no fee") {}
};

/// The participation conditions cannot all hold: total value does not cover
/// total cost. Carries the deficit (total cost minus total value).
class Infeasible : public Error {
 public:
  explicit Infeasible(double deficit)
      : Error("infeasible: total cost exceeds total value by " +
              std::to_string(deficit)),
        deficit_(deficit) {}
  double deficit() const { return deficit_; }

 private:
  double deficit_;
};

/// One or more edges of an ecosystem fail the per-edge feasibility
/// condition. Carries every failing (provider, consumer) pair.
class InfeasibleEdge : public Error {
 public:
  using EdgeId = std::pair<std::string, std::string>;

  explicit InfeasibleEdge(std::vector<EdgeId> edges)
      : Error(describe(edges)), edges_(std::move(edges)) {}
  const std::vector<EdgeId>& edges() const { return edges_; }

 private:
  static std::string describe(const std::vector<EdgeId>& edges) {
    std::string msg = "infeasible edge(s):";
    for (const auto& [p, c] : edges) msg += " (" + p + "," + c + ")";
    return msg;
  }
  std::vector<EdgeId> edges_;
};

/// A bracketed root finder was given an interval without a sign change.
class NoBracket : public Error {
 public:
  explicit NoBracket(const std::string& what) : Error(what) {}
};

/// A root finder hit its iteration cap before meeting tolerance.
class NonConvergence : public Error {
 public:
  explicit NonConvergence(const std::string& what) : Error(what) {}
};

/// The supply response n(X) is flat somewhere on the search bracket, so the
/// n/n' adjustment of the utility-maximizing fee is undefined.
class InelasticSupply : public Error {
 public:
  explicit InelasticSupply(double x)
      : Error("inelastic supply: n'(X) vanishes near X = " +
              std::to_string(x)) {}
};

/// A user-supplied model function threw or returned a non-finite value
/// during a grid sweep.
class EvaluationFailure : public Error {
 public:
  explicit EvaluationFailure(const std::string& what) : Error(what) {}
};

// -- scenario / CLI errors ---------------------------------------------------

/// Scenario file is not syntactically valid.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

/// Scenario declares a schema version this build does not understand.
class SchemaMismatch : public Error {
 public:
  explicit SchemaMismatch(const std::string& found)
      : Error("unsupported schema_version \"" + found + "\" (expected \"1\")") {}
};

/// Scenario contains a field the schema does not define.
class UnknownField : public Error {
 public:
  explicit UnknownField(const std::string& context, const std::string& field)
      : Error("unknown field \"" + field + "\" in " + context), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace ecokit
