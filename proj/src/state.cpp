#include "qlab/state.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qlab {

namespace {

constexpr Register kUnbounded = std::numeric_limits<Register>::max();
constexpr Register kNegUnbounded = std::numeric_limits<Register>::min();

void prune(PureState::Terms& terms) {
  std::erase_if(terms, [](const auto& kv) { return std::abs(kv.second) < kPruneThreshold; });
}

}  // namespace

bool Schema::admits(std::span<const Register> regs) const {
  if (regs.size() != registers.size()) return false;
  for (std::size_t k = 0; k < regs.size(); ++k) {
    if (regs[k] < registers[k].min || regs[k] > registers[k].max) return false;
  }
  return true;
}

Schema lookup_schema(int id) {
  switch (id) {
    case schemas::kGeneric:
      return {id, "generic", {{"z", 0, kUnbounded}, {"i", 0, kUnbounded}}};
    case schemas::kComparison:
      return {id, "comparison",
              {{"z", 0, kUnbounded}, {"i", 0, kUnbounded}, {"i'", 0, kUnbounded}}};
    default:
      break;
  }
  if (id >= schemas::kTreeBase && id < schemas::kTreeBase + 64) {
    Schema s{id, "tree", {}};
    for (int k = 0; k < id - schemas::kTreeBase; ++k) {
      s.registers.push_back({"color" + std::to_string(k), -1, kUnbounded});
    }
    s.registers.push_back({"kind", 0, 4});
    s.registers.push_back({"id", 0, kUnbounded});
    s.registers.push_back({"aux", kNegUnbounded, kUnbounded});
    return s;
  }
  throw SchemaError("unknown schema id " + std::to_string(id));
}

std::string format_registers(std::span<const Register> regs) {
  std::ostringstream out;
  out << '|';
  for (std::size_t k = 0; k < regs.size(); ++k) {
    if (k) out << ';';
    out << regs[k];
  }
  out << '>';
  return out.str();
}

PureState::PureState(int schema, Terms terms) : schema_(schema), terms_(std::move(terms)) {
  prune(terms_);
}

Complex PureState::amplitude(const Registers& label) const {
  auto it = terms_.find(label);
  return it == terms_.end() ? Complex{} : it->second;
}

double PureState::squared_norm() const {
  double sum = 0.0;
  for (const auto& [label, amp] : terms_) sum += std::norm(amp);
  return sum;
}

double PureState::norm() const { return std::sqrt(squared_norm()); }

std::vector<BasisLabel> PureState::support() const {
  std::vector<BasisLabel> out;
  out.reserve(terms_.size());
  for (const auto& [label, amp] : terms_) out.push_back({schema_, label});
  return out;
}

PureState make_basis_state(int schema, Registers registers) {
  const Schema layout = lookup_schema(schema);
  if (!layout.admits(registers)) {
    throw SchemaError("registers " + format_registers(registers) + " violate schema " +
                      layout.name);
  }
  PureState::Terms terms;
  terms.emplace(std::move(registers), Complex{1.0, 0.0});
  return PureState(schema, std::move(terms));
}

PureState superposition(int schema,
                        const std::vector<std::pair<Registers, Complex>>& terms) {
  PureState::Terms acc;
  for (const auto& [label, amp] : terms) acc[label] += amp;
  return PureState(schema, std::move(acc));
}

namespace {

void require_same_schema(const PureState& a, const PureState& b, const char* what) {
  if (a.schema() != b.schema()) {
    throw SchemaError(std::string(what) + ": schema mismatch (" + std::to_string(a.schema()) +
                      " vs " + std::to_string(b.schema()) + ")");
  }
}

}  // namespace

PureState operator+(const PureState& a, const PureState& b) {
  require_same_schema(a, b, "sum");
  PureState::Terms acc = a.terms();
  for (const auto& [label, amp] : b.terms()) acc[label] += amp;
  return PureState(a.schema(), std::move(acc));
}

PureState operator-(const PureState& a, const PureState& b) { return a + Complex{-1.0} * b; }

PureState operator*(Complex c, const PureState& s) {
  PureState::Terms acc = s.terms();
  for (auto& [label, amp] : acc) amp *= c;
  return PureState(s.schema(), std::move(acc));
}

double distance(const PureState& a, const PureState& b) {
  require_same_schema(a, b, "distance");
  double sum = 0.0;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (ia != a.terms().end() || ib != b.terms().end()) {
    if (ib == b.terms().end() || (ia != a.terms().end() && ia->first < ib->first)) {
      sum += std::norm(ia->second);
      ++ia;
    } else if (ia == a.terms().end() || ib->first < ia->first) {
      sum += std::norm(ib->second);
      ++ib;
    } else {
      sum += std::norm(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return std::sqrt(sum);
}

PureState apply_op(const LinearOp& op, const PureState& s) {
  PureState::Terms out;
  for (const auto& [label, amp] : s.terms()) {
    if (!op.in_domain(label)) {
      throw DomainError(op.name() + ": support label " + format_registers(label) +
                        " is outside the operator domain");
    }
    for (auto& [image, coeff] : op.image(label)) out[std::move(image)] += amp * coeff;
  }
  PureState result(s.schema(), std::move(out));
  const double before = s.norm();
  const double after = result.norm();
  if (std::abs(after - before) > kCheckTolerance * std::max(1.0, before)) {
    std::ostringstream msg;
    msg << op.name() << ": norm changed from " << before << " to " << after;
    throw IsometryError(msg.str());
  }
  return result;
}

Complex inner_product(const PureState& a, const PureState& b) {
  require_same_schema(a, b, "inner_product");
  const auto& small = a.size() <= b.size() ? a.terms() : b.terms();
  const auto& large = a.size() <= b.size() ? b.terms() : a.terms();
  const bool a_is_small = a.size() <= b.size();
  Complex sum{};
  for (const auto& [label, amp] : small) {
    auto it = large.find(label);
    if (it == large.end()) continue;
    sum += a_is_small ? std::conj(amp) * it->second : std::conj(it->second) * amp;
  }
  return sum;
}

PureState project_if(const PureState& s,
                     const std::function<bool(std::span<const Register>)>& pred) {
  PureState::Terms kept;
  for (const auto& [label, amp] : s.terms()) {
    if (pred(label)) kept.emplace(label, amp);
  }
  return PureState(s.schema(), std::move(kept));
}

PureState project_query_index(const PureState& s, Register i) {
  if (s.schema() != schemas::kGeneric) {
    throw SchemaError("project_query_index requires the generic schema");
  }
  if (i < 0) return PureState(s.schema(), {});
  return project_if(s, [i](std::span<const Register> label) { return label[1] == i; });
}

PureState project_comparison_pair(const PureState& s, Register i, Register j) {
  if (s.schema() != schemas::kComparison) {
    throw SchemaError("project_comparison_pair requires the comparison schema");
  }
  if (i == j) {
    throw std::invalid_argument("project_comparison_pair: indices must differ (got " +
                                std::to_string(i) + " twice)");
  }
  return project_if(s, [i, j](std::span<const Register> label) {
    return (label[1] == i && label[2] == j) || (label[1] == j && label[2] == i);
  });
}

double MeasurementResult::probability(Register value) const {
  auto it = distribution.find(value);
  return it == distribution.end() ? 0.0 : it->second;
}

double MeasurementResult::total() const {
  double sum = 0.0;
  for (const auto& [value, p] : distribution) sum += p;
  return sum;
}

MeasurementResult measure_register(const PureState& s, std::size_t position) {
  MeasurementResult result;
  const double total = s.squared_norm();
  if (total == 0.0) return result;
  for (const auto& [label, amp] : s.terms()) {
    if (position >= label.size()) {
      throw SchemaError("measure_register: position " + std::to_string(position) +
                        " out of range for " + format_registers(label));
    }
    result.distribution[label[position]] += std::norm(amp) / total;
  }
  return result;
}

nlohmann::json state_to_json(const PureState& s) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [label, amp] : s.terms()) {
    terms.push_back({{"label", label}, {"re", amp.real()}, {"im", amp.imag()}});
  }
  return {{"schema", s.schema()}, {"terms", std::move(terms)}};
}

PureState state_from_json(const nlohmann::json& j) {
  const int schema = j.at("schema").get<int>();
  PureState::Terms terms;
  for (const auto& t : j.at("terms")) {
    terms[t.at("label").get<Registers>()] +=
        Complex{t.at("re").get<double>(), t.at("im").get<double>()};
  }
  return PureState(schema, std::move(terms));
}

}  // namespace qlab
