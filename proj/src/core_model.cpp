#include "ecokit/core_model.hpp"

#include <cmath>
#include <set>
#include <utility>

namespace ecokit {

namespace {

bool edge_less(const Edge& a, const Edge& b) {
  return std::tie(a.provider, a.consumer) < std::tie(b.provider, b.consumer);
}

}  // namespace

Ecosystem::Ecosystem(std::vector<Participant> participants,
                     std::vector<Edge> edges, std::string time_window)
    : participants_(std::move(participants)),
      edges_(std::move(edges)),
      time_window_(std::move(time_window)) {
  std::sort(participants_.begin(), participants_.end(),
            [](const Participant& a, const Participant& b) { return a.id < b.id; });
  std::sort(edges_.begin(), edges_.end(), edge_less);
}

bool Ecosystem::has_participant(const std::string& id) const {
  return std::any_of(participants_.begin(), participants_.end(),
                     [&](const Participant& p) { return p.id == id; });
}

std::vector<std::string> Ecosystem::provider_ids() const {
  std::set<std::string> ids;
  for (const Edge& e : edges_) ids.insert(e.provider);
  return {ids.begin(), ids.end()};
}

std::vector<std::string> Ecosystem::consumer_ids() const {
  std::set<std::string> ids;
  for (const Edge& e : edges_) ids.insert(e.consumer);
  return {ids.begin(), ids.end()};
}

double Ecosystem::consumer_investment_total() const {
  const auto consumers = consumer_ids();
  double total = 0.0;
  for (const std::string& id : consumers) {
    for (const Participant& p : participants_) {
      if (p.id == id) total += p.investment;
    }
  }
  return total;
}

namespace {

void check_amount(std::vector<Violation>& out, double value, const char* label,
                  const std::string& where) {
  if (!std::isfinite(value)) {
    out.push_back({ViolationKind::non_finite,
                   std::string("non-finite ") + label + " on " + where});
  } else if (value < 0.0) {
    const bool cost = label[0] == 't';
    out.push_back({ViolationKind::negative_value,
                   std::string(cost ? "negative transaction cost " : "negative value ") +
                       label + " on " + where});
  }
}

}  // namespace

ValidationReport validate_ecosystem(const Ecosystem& eco) {
  ValidationReport report;
  auto& out = report.violations;

  std::set<std::string> seen;
  for (const Participant& p : eco.participants()) {
    if (!seen.insert(p.id).second) {
      out.push_back({ViolationKind::duplicate_participant,
                     "duplicate participant id '" + p.id + "'"});
    }
    if (!std::isfinite(p.investment)) {
      out.push_back({ViolationKind::non_finite,
                     "non-finite investment for participant '" + p.id + "'"});
    } else if (p.investment < 0.0) {
      out.push_back({ViolationKind::negative_investment,
                     "negative investment for participant '" + p.id + "'"});
    }
  }

  std::set<std::pair<std::string, std::string>> pairs;
  for (const Edge& e : eco.edges()) {
    const std::string where = "edge (" + e.provider + "," + e.consumer + ")";
    for (const std::string& id : {e.provider, e.consumer}) {
      if (!eco.has_participant(id)) {
        out.push_back({ViolationKind::unknown_participant,
                       "unknown participant '" + id + "' on " + where});
      }
    }
    if (e.provider == e.consumer) {
      out.push_back({ViolationKind::self_loop, "self-loop on " + where});
    }
    if (!pairs.insert({e.provider, e.consumer}).second) {
      out.push_back({ViolationKind::duplicate_edge, "duplicate " + where});
    }
    check_amount(out, e.terms.v_p, "v_p", where);
    check_amount(out, e.terms.v_c, "v_c", where);
    check_amount(out, e.terms.t_p, "t_p", where);
    check_amount(out, e.terms.t_c, "t_c", where);
    if (e.terms.x && !std::isfinite(*e.terms.x)) {
      out.push_back({ViolationKind::non_finite, "non-finite fee x on " + where});
    }
  }
  return report;
}

std::pair<double, double> project(const TransactionTerms& terms, Role role) {
  if (role == Role::provider) return {terms.v_p, terms.t_p};
  return {terms.v_c, terms.t_c};
}

EdgeSurplus edge_surplus(const TransactionTerms& terms) {
  if (!terms.x) throw MissingFee();
  EdgeSurplus s;
  s.w_p = terms.v_p + *terms.x - terms.t_p;
  s.w_c = terms.v_c - *terms.x - terms.t_c;
  s.margin = s.w_p + s.w_c;
  return s;
}

FeasibilityReport internal_feasibility(const Ecosystem& eco,
                                       bool include_investments, double eps) {
  FeasibilityReport report;
  report.investments_included = include_investments;

  // Fees cancel in the total: sum net benefits per role over all relations.
  const double provider_net =
      sigma(eco.edges(), [](const Edge& e) { return e.terms.v_p - e.terms.t_p; });
  const double consumer_net =
      sigma(eco.edges(), [](const Edge& e) { return e.terms.v_c - e.terms.t_c; });
  report.total_margin = provider_net + consumer_net;
  if (include_investments) {
    report.total_investment = eco.consumer_investment_total();
    report.total_margin -= report.total_investment;
  }
  report.internally_feasible = report.total_margin > eps;

  const bool all_fees_set =
      std::all_of(eco.edges().begin(), eco.edges().end(),
                  [](const Edge& e) { return e.terms.x.has_value(); });
  report.all_participation_met = all_fees_set;
  if (all_fees_set) {
    for (const Edge& e : eco.edges()) {
      const EdgeSurplus s = edge_surplus(e.terms);
      const bool ok = s.w_p > eps && s.w_c > eps;
      report.per_edge.push_back({e, s, ok});
      if (!ok) report.all_participation_met = false;
    }
  }
  return report;
}

}  // namespace ecokit
