#pragma once

#include <json.hpp>

#include <string>

#include "prufer/canonical.hpp"
#include "prufer/characters.hpp"
#include "prufer/combination.hpp"
#include "prufer/construction.hpp"
#include "prufer/element.hpp"
#include "prufer/sequences.hpp"
#include "prufer/window.hpp"

/*
 * JSON wire formats.  Elements and circle values travel as their literal
 * strings (`3/2^4`, `0`), orders as `p^k`, big integers as decimal
 * strings.  Object keys come out sorted (nlohmann stores objects in a
 * map), so identical inputs serialize to identical bytes.
 *
 * Canonical forms are emitted with the even subscript of e under
 * "index"; the support sets Lambda list the n-keys (index = 2n).
 */

namespace prufer {

using json = nlohmann::json;

inline json term_json(const Term& t) { return json{{"k", t.index}, {"m", t.coeff}}; }

inline json combination_json(const Combination& c, const std::string& seq_name) {
  json terms = json::array();
  for (const Term& t : c.terms()) terms.push_back(term_json(t));
  return json{{"seq", seq_name}, {"terms", terms}};
}

inline Combination combination_from_json(const json& j, std::string* seq_name = nullptr) {
  if (seq_name && j.contains("seq")) *seq_name = j.at("seq").get<std::string>();
  std::vector<Term> terms;
  for (const json& t : j.at("terms"))
    terms.push_back(Term{t.at("k").get<std::uint64_t>(), t.at("m").get<long long>()});
  return Combination(std::move(terms));
}

inline json support_json(const SupportReport& s) {
  return json{{"lambda", s.lambda_set}, {"lambda_count", s.lambda_count()}};
}

inline json canonical_json(const CanonicalForm& cf) {
  json coeffs = json::array();
  for (const auto& [n, sigma] : cf.coeffs)
    coeffs.push_back(json{{"index", 2 * n}, {"sigma", sigma}});
  return json{{"coeffs", coeffs},
              {"value", cf.value.str()},
              {"support", support_json(cf.support())}};
}

inline json window_json(const Window& w, const std::string& seq_name) {
  json elems = json::array();
  for (const WindowEntry& e : w.entries)
    elems.push_back(json{{"value", e.value.str()},
                         {"order", e.value.order().str()},
                         {"witness", combination_json(e.witness, seq_name)}});
  return json{{"M", w.params.M},
              {"combinations", w.combination_count},
              {"elements", elems},
              {"l", w.params.l},
              {"m", w.params.m},
              {"seq", seq_name},
              {"truncated", true}};
}

inline json intersection_json(const IntersectionReport& r, const std::string& seq_name) {
  json witnesses = json::array();
  for (const WindowEntry& e : r.witnesses)
    witnesses.push_back(json{{"value", e.value.str()},
                             {"order", e.value.order().str()},
                             {"witness", combination_json(e.witness, seq_name)}});
  return json{{"M", r.params.M},       {"empty", r.empty},
              {"l", r.params.l},       {"m", r.params.m},
              {"n", r.params.n_level}, {"seq", seq_name},
              {"truncated", true},     {"witnesses", witnesses}};
}

inline json m0_search_json(const M0Search& s) {
  json j{{"stable_through", s.stable_through},
         {"truncated", true},
         {"note", "desk-scale certificate for the truncated window only"}};
  if (s.m0)
    j["m0"] = *s.m0;
  else
    j["m0"] = nullptr;
  return j;
}

inline json gap_growth_json(const GapGrowthCert& g) {
  return json{{"diffs", g.diffs}, {"ok", g.ok}};
}

inline json order_law_json(const OrderLawCert& c) {
  return json{{"actual", c.actual.str()},
              {"claimed", "2^" + std::to_string(c.claimed_exp)},
              {"holds", c.holds},
              {"k", c.k}};
}

inline json m0_certificate_json(const M0Certificate& c) {
  return json{{"M1", c.M1}, {"M2", c.M2}, {"formula_4l_n_k0", c.formula}, {"m0", c.m0}};
}

inline json scaled_sum_json(const ScaledSumBoundCert& c) {
  return json{{"actual", c.actual.str()},
              {"bound", c.bound.str()},
              {"bound_floor", c.bound_floor.str()},
              {"holds", c.holds}};
}

inline json cross_pair_json(const CrossTermPair& p) {
  return json{{"chain_bound", "4^" + std::to_string(p.chain_exp4)},
              {"chain_holds", p.chain_holds},
              {"consistent", p.consistent},
              {"direct_holds", p.direct_holds},
              {"k_h", p.k_h},
              {"m_h", p.m_h},
              {"order_w_plus_z", p.direct.str()},
              {"pass", p.pass},
              {"scaled_sum", scaled_sum_json(p.scaled)},
              {"tail_bound", "4^" + std::to_string(p.tail_exp4)},
              {"w", p.w.str()},
              {"x_separated", p.x_separated},
              {"z", p.z.str()}};
}

inline json cross_certificate_json(const CrossTermCertificate& c) {
  json pairs = json::array();
  for (const CrossTermPair& p : c.pairs) pairs.push_back(cross_pair_json(p));
  return json{{"M", c.M},           {"all_pass", c.all_pass}, {"l", c.l},
              {"m", c.m},           {"n", c.n_level},         {"pairs", pairs},
              {"vacuous", c.vacuous}};
}

inline json tsequence_certificate_json(const TSequenceCertificate& c) {
  json order_laws = json::array();
  for (const OrderLawCert& ol : c.order_laws) order_laws.push_back(order_law_json(ol));
  json e_checks = json::array(), b_checks = json::array(), crosses = json::array();
  for (const IntersectionReport& r : c.e_checks) e_checks.push_back(intersection_json(r, "e"));
  for (const IntersectionReport& r : c.b_checks) b_checks.push_back(intersection_json(r, "b"));
  for (const CrossTermCertificate& x : c.cross_checks) crosses.push_back(cross_certificate_json(x));
  json j{{"M", c.M},
         {"b_window_checks", b_checks},
         {"cross_term_checks", crosses},
         {"e_window_checks", e_checks},
         {"gap_growth", gap_growth_json(c.gap_growth)},
         {"l", c.l},
         {"m1_search", m0_search_json(c.m1_search)},
         {"m2_search", m0_search_json(c.m2_search)},
         {"n", c.n_level},
         {"order_laws", order_laws},
         {"pass", c.pass},
         {"vacuous", c.vacuous},
         {"x", c.target.x.str()}};
  if (c.m0) j["m0"] = m0_certificate_json(*c.m0);
  return j;
}

inline json radical_json(const RadicalReport& r, bool include_residues = false) {
  json j{{"accepted_m", r.accepted_m},
         {"degenerate", r.degenerate},
         {"generator", r.generator.str()},
         {"level", r.level},
         {"size", "2^" + std::to_string(r.size_exp)}};
  if (include_residues) j["residues"] = r.residues;
  return j;
}

inline json classify_json(const ClassifyReport& r) {
  return json{{"K", r.K},
              {"accepted", r.accepted},
              {"disagreements", r.disagreements},
              {"epsilon", r.epsilon.str()},
              {"m_range", json{{"hi", r.m_hi}, {"lo", r.m_lo}}},
              {"rejected", r.rejected},
              {"rule", "norm <= epsilon at every b-position in the second half"}};
}

inline json profile_json(const std::vector<std::pair<std::uint64_t, CircleValue>>& norms) {
  json j = json::array();
  for (const auto& [k, n] : norms) j.push_back(json{{"k", k}, {"norm", n.str()}});
  return j;
}

inline json probe_json(const PadicProbeReport& r) {
  return json{{"conclusive", false},
              {"looks_nonconvergent", r.looks_nonconvergent},
              {"max_tail_norm", r.max_tail_norm.str()},
              {"norms", profile_json(r.norms)}};
}

}  // namespace prufer
