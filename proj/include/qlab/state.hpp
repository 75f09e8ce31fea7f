// Sparse pure states over structured basis labels, label-rewrite operators,
// projections and computational-basis measurement for the quantum query model.
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qlab {

using Complex = std::complex<double>;
using Register = std::int64_t;
using Registers = std::vector<Register>;

/// Amplitudes with magnitude below this are dropped after every operation.
inline constexpr double kPruneThreshold = 1e-15;
/// Tolerance for user-visible checks (norms, probabilities).
inline constexpr double kCheckTolerance = 1e-9;
/// Tolerance for internal algebraic identities (isometry Gram checks).
inline constexpr double kAlgebraTolerance = 1e-12;

namespace schemas {
/// |z; i>: workspace z, query index i.
inline constexpr int kGeneric = 0;
/// |z; i, i'>: workspace z, compared index pair.
inline constexpr int kComparison = 1;
/// Tree-search layouts: kTreeBase + number of recursion color registers.
inline constexpr int kTreeBase = 100;
}  // namespace schemas

class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IsometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RegisterSpec {
  std::string name;
  Register min;
  Register max;
};

struct Schema {
  int id = 0;
  std::string name;
  std::vector<RegisterSpec> registers;

  bool admits(std::span<const Register> regs) const;
};

/// Built-in schemas plus the tree layouts (id >= kTreeBase). Throws SchemaError
/// for unknown ids.
Schema lookup_schema(int id);

struct BasisLabel {
  int schema = schemas::kGeneric;
  Registers registers;

  friend auto operator<=>(const BasisLabel&, const BasisLabel&) = default;
};

std::string format_registers(std::span<const Register> regs);

class PureState {
 public:
  using Terms = std::map<Registers, Complex>;

  PureState() = default;
  /// Takes ownership of the terms and prunes numerical dust. No normalization
  /// is imposed so that projections can be represented.
  PureState(int schema, Terms terms);

  int schema() const { return schema_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  Complex amplitude(const Registers& label) const;
  double squared_norm() const;
  double norm() const;
  std::vector<BasisLabel> support() const;

  friend bool operator==(const PureState&, const PureState&) = default;

 private:
  int schema_ = schemas::kGeneric;
  Terms terms_;
};

PureState make_basis_state(int schema, Registers registers);

/// Builds sum_k c_k |label_k> (duplicate labels accumulate).
PureState superposition(int schema,
                        const std::vector<std::pair<Registers, Complex>>& terms);

PureState operator+(const PureState& a, const PureState& b);
PureState operator-(const PureState& a, const PureState& b);
PureState operator*(Complex c, const PureState& s);

/// ||a - b||.
double distance(const PureState& a, const PureState& b);

/// A linear map given by a rewrite rule on basis labels. The rule is only
/// consulted on labels accepted by the domain predicate.
class LinearOp {
 public:
  using Image = std::vector<std::pair<Registers, Complex>>;
  using Domain = std::function<bool(std::span<const Register>)>;
  using Rule = std::function<Image(std::span<const Register>)>;

  LinearOp(std::string name, Domain domain, Rule rule)
      : name_(std::move(name)), domain_(std::move(domain)), rule_(std::move(rule)) {}

  const std::string& name() const { return name_; }
  bool in_domain(std::span<const Register> label) const { return domain_(label); }
  Image image(std::span<const Register> label) const { return rule_(label); }

 private:
  std::string name_;
  Domain domain_;
  Rule rule_;
};

/// Applies the linear extension of op. Throws DomainError naming the first
/// support label outside the domain and IsometryError if the norm moves by
/// more than kCheckTolerance.
PureState apply_op(const LinearOp& op, const PureState& s);

/// <a|b>, conjugate-linear in a.
Complex inner_product(const PureState& a, const PureState& b);

/// P_i on the generic schema; the zero projection for i < 0.
PureState project_query_index(const PureState& s, Register i);

/// P_{ii'} on the comparison schema: keeps |z; i, i'> and |z; i', i>.
PureState project_comparison_pair(const PureState& s, Register i, Register j);

/// Keeps the amplitudes whose label satisfies pred.
PureState project_if(const PureState& s,
                     const std::function<bool(std::span<const Register>)>& pred);

struct MeasurementResult {
  std::map<Register, double> distribution;

  double probability(Register value) const;
  double total() const;
};

MeasurementResult measure_register(const PureState& s, std::size_t position);

nlohmann::json state_to_json(const PureState& s);
PureState state_from_json(const nlohmann::json& j);

}  // namespace qlab
