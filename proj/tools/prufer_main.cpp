// prufer - exact arithmetic and certificates for Z(2^inf) sequences.
//
// Subcommands: canon, order, aset, tcheck, construct, certify, radical,
// profile, verify-paper.  Every command echoes its full parameter set in
// the report; --json output is deterministic (sorted keys, exact values
// as literals).  Exit codes: 0 success/pass, 1 certificate failure,
// 2 usage or resource error.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "prufer/json_io.hpp"
#include "prufer/prufer.hpp"
#include "prufer/verify.hpp"

namespace {

using prufer::json;

std::uint64_t combination_cap() {
  if (const char* env = std::getenv("PRUFER_MAX_COMBINATIONS")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("PRUFER_MAX_COMBINATIONS must be an integer");
    }
  }
  return prufer::kDefaultCombinationCap;
}

json envelope(const std::string& command, json params, json result, const std::string& verdict) {
  return json{{"command", command},
              {"params", std::move(params)},
              {"result", std::move(result)},
              {"verdict", verdict}};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

prufer::Sequence make_sequence(const std::string& name, const std::string& x_literal,
                               long long p = 2) {
  if (name == "e") return prufer::Sequence::e(p);
  if (x_literal.empty())
    throw std::invalid_argument("sequence '" + name + "' requires --x");
  const auto target = prufer::RadicalTarget::of(prufer::Element::parse(x_literal));
  if (name == "b") return prufer::Sequence::b(target);
  if (name == "d") return prufer::Sequence::d(target);
  throw std::invalid_argument("unknown sequence '" + name + "' (expected e, b or d)");
}

std::pair<long long, long long> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos)
    throw std::invalid_argument("malformed range '" + s + "' (expected lo..hi)");
  try {
    return {std::stoll(s.substr(0, dots)), std::stoll(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed range '" + s + "' (expected lo..hi)");
  }
}

std::string witness_text(const prufer::Combination& c, const std::string& seq) {
  std::string out;
  for (const prufer::Term& t : c.terms()) {
    if (!out.empty()) out += " + ";
    out += std::to_string(t.coeff) + "*" + seq + "_" + std::to_string(t.index);
  }
  return out.empty() ? "(empty)" : out;
}

// ---- canon ----------------------------------------------------------

int run_canon(const std::string& literal, const std::string& combo_txt, bool as_json) {
  json params;
  prufer::CanonicalForm cf;
  json result;
  if (!combo_txt.empty()) {
    std::string seq_name = "e";
    const prufer::Combination c =
        prufer::combination_from_json(json::parse(combo_txt), &seq_name);
    if (seq_name != "e")
      throw std::invalid_argument("canonical forms are taken over the e sequence");
    params["combo"] = prufer::combination_json(c, seq_name);
    const prufer::Combination even = prufer::to_even_support(c);
    cf = prufer::canonicalize(c);
    result["even_support"] = prufer::combination_json(even, "e");
  } else {
    params["element"] = literal;
    cf = prufer::canonicalize(prufer::Element::parse(literal));
  }
  result.update(prufer::canonical_json(cf));
  if (as_json) {
    emit(envelope("canon", params, result, "info"));
    return 0;
  }
  std::cout << "value  = " << cf.value.str() << "\n";
  for (const auto& [n, sigma] : cf.coeffs)
    std::cout << "sigma[" << 2 * n << "] = " << sigma << "\n";
  std::cout << "lambda = " << cf.lambda() << "\n";
  return 0;
}

// ---- order ----------------------------------------------------------

int run_order(const std::string& literal, bool as_json) {
  const prufer::Element x = prufer::Element::parse(literal);
  if (as_json) {
    emit(envelope("order", json{{"element", literal}},
                  json{{"element", x.str()}, {"order", x.order().str()}}, "info"));
    return 0;
  }
  std::cout << x.order().str() << "\n";
  return 0;
}

// ---- aset -----------------------------------------------------------

int run_aset(const std::string& seq_name, const std::string& x_literal, std::uint64_t l,
             std::uint64_t m, std::uint64_t M, long long p, bool as_json) {
  const prufer::Sequence seq = make_sequence(seq_name, x_literal, p);
  const prufer::Window w =
      prufer::enumerate_window(seq, prufer::WindowParams{l, m, M, 0}, combination_cap());
  json params{{"M", M}, {"l", l}, {"m", m}, {"seq", seq_name}};
  if (!x_literal.empty()) params["x"] = x_literal;
  if (seq_name == "e") params["p"] = p;
  if (as_json) {
    emit(envelope("aset", params, prufer::window_json(w, seq_name), "info"));
    return 0;
  }
  std::cout << w.entries.size() << " values from " << w.combination_count << " combinations\n";
  for (const prufer::WindowEntry& e : w.entries)
    std::cout << e.value.str() << "  (order " << e.value.order().str() << ")  <-  "
              << witness_text(e.witness, seq_name) << "\n";
  return 0;
}

// ---- tcheck ---------------------------------------------------------

int run_tcheck(const std::string& seq_name, const std::string& x_literal, std::uint64_t l,
               std::uint64_t n, std::uint64_t M, std::optional<std::uint64_t> m, bool find_m0,
               std::uint64_t m_cap, bool as_json) {
  const prufer::Sequence seq = make_sequence(seq_name, x_literal);
  json params{{"M", M}, {"l", l}, {"n", n}, {"seq", seq_name}};
  if (!x_literal.empty()) params["x"] = x_literal;

  if (find_m0) {
    const std::uint64_t cap_m = m_cap == 0 ? M : m_cap;
    params["m_cap"] = cap_m;
    const prufer::M0Search s = prufer::search_m0(seq, l, n, M, cap_m, combination_cap());
    const bool found = s.m0.has_value();
    if (as_json) {
      emit(envelope("tcheck", params, prufer::m0_search_json(s), found ? "pass" : "fail"));
    } else if (found) {
      std::cout << "m0 = " << *s.m0 << " (window checked through M = " << s.stable_through
                << "; truncated certificate)\n";
    } else {
      std::cout << "no m <= " << cap_m << " empties the window (M = " << M << ")\n";
    }
    return found ? 0 : 1;
  }

  const std::uint64_t m_val = m.value_or(1);
  params["m"] = m_val;
  const prufer::IntersectionReport r = prufer::check_torsion_intersection(
      seq, prufer::WindowParams{l, m_val, M, n}, combination_cap());
  if (as_json) {
    emit(envelope("tcheck", params, prufer::intersection_json(r, seq_name),
                  r.empty ? "pass" : "fail"));
  } else if (r.empty) {
    std::cout << "A[2^" << n << "] meets the window only in 0 (m = " << m_val << ", M = " << M
              << ")\n";
  } else {
    std::cout << r.witnesses.size() << " nonzero window elements inside A[2^" << n << "]:\n";
    for (const prufer::WindowEntry& e : r.witnesses)
      std::cout << "  " << e.value.str() << "  <-  " << witness_text(e.witness, seq_name) << "\n";
  }
  return r.empty ? 0 : 1;
}

// ---- construct ------------------------------------------------------

int run_construct(const std::string& seq_name, const std::string& x_literal, std::uint64_t count,
                  bool as_json) {
  if (count == 0 || count > 128)
    throw std::invalid_argument("--count must be in 1..128");
  const prufer::Sequence seq = make_sequence(seq_name, x_literal);
  json params{{"count", count}, {"seq", seq_name}};
  if (!x_literal.empty()) params["x"] = x_literal;
  json terms = json::array();
  for (std::uint64_t k = 1; k <= count; ++k) {
    const prufer::Element t = seq.term(k);
    terms.push_back(json{{"k", k}, {"order", t.order().str()}, {"value", t.str()}});
  }
  if (as_json) {
    emit(envelope("construct", params, json{{"terms", terms}}, "info"));
    return 0;
  }
  for (const json& t : terms)
    std::cout << seq_name << "_" << t["k"] << " = " << t["value"].get<std::string>()
              << "  (order " << t["order"].get<std::string>() << ")\n";
  return 0;
}

// ---- certify --------------------------------------------------------

int run_certify(const std::string& x_literal, std::uint64_t l, std::uint64_t n, std::uint64_t M,
                std::uint64_t laws, bool as_json) {
  const auto target = prufer::RadicalTarget::of(prufer::Element::parse(x_literal));
  const prufer::TSequenceCertificate cert =
      prufer::certify_tsequence(target, l, n, M, laws, combination_cap());
  json params{{"M", M}, {"l", l}, {"laws", laws}, {"n", n}, {"x", x_literal}};
  if (as_json) {
    emit(envelope("certify", params, prufer::tsequence_certificate_json(cert),
                  cert.pass ? "pass" : "fail"));
    return cert.pass ? 0 : 1;
  }
  std::cout << "order laws o(b_k) = 2^(2k^3), k = " << target.k0 << ".."
            << target.k0 + laws << ": "
            << (cert.order_laws.back().holds ? "ok" : "FAIL") << "\n";
  std::cout << "gap growth of b-orders: " << (cert.gap_growth.ok ? "ok" : "FAIL") << "\n";
  std::cout << "M1 (seq e) = "
            << (cert.m1_search.m0 ? std::to_string(*cert.m1_search.m0) : "none")
            << ", M2 (seq b) = "
            << (cert.m2_search.m0 ? std::to_string(*cert.m2_search.m0) : "none") << "\n";
  if (cert.m0)
    std::cout << "m0 = max{M1, M2, 4l+n+k0} = max{" << cert.m0->M1 << ", " << cert.m0->M2 << ", "
              << cert.m0->formula << "} = " << cert.m0->m0 << "\n";
  if (cert.vacuous) {
    std::cout << "window [m0, M] is empty at this truncation; checks are vacuous\n";
  } else {
    std::size_t pairs = 0;
    for (const auto& c : cert.cross_checks) pairs += c.pairs.size();
    std::cout << "torsion checks for m = " << cert.m0->m0 << ".." << M << ": "
              << cert.e_checks.size() << " windows on e and b\n";
    std::cout << "cross-term chain: " << pairs << " pairs\n";
  }
  std::cout << "verdict: " << (cert.pass ? "pass" : "FAIL") << "\n";
  return cert.pass ? 0 : 1;
}

// ---- radical --------------------------------------------------------

int run_radical(const std::string& x_literal, const std::string& range, std::uint64_t level,
                bool residues, bool as_json) {
  const auto target = prufer::RadicalTarget::of(prufer::Element::parse(x_literal));
  const auto [lo, hi] = parse_range(range);
  const prufer::RadicalReport r = prufer::radical_at_level(target, lo, hi, level);
  json params{{"level", level}, {"m_range", range}, {"x", x_literal}};
  if (as_json) {
    emit(envelope("radical", params, prufer::radical_json(r, residues), "info"));
    return 0;
  }
  std::cout << "intersection of kernels inside <e_" << level << ">: subgroup of size 2^"
            << r.size_exp << ", generator " << r.generator.str() << "\n";
  if (r.degenerate)
    std::cout << "warning: no nonzero accepted character in range; result is the full level\n";
  return 0;
}

// ---- profile --------------------------------------------------------

int run_profile(const std::string& chi_txt, const std::string& seq_name,
                const std::string& x_literal, std::uint64_t K, bool classify,
                const std::string& range, const std::string& eps_txt, bool as_json) {
  json params{{"K", K}, {"seq", seq_name}};
  if (!x_literal.empty()) params["x"] = x_literal;

  if (classify) {
    if (x_literal.empty()) throw std::invalid_argument("--classify requires --x");
    const auto target = prufer::RadicalTarget::of(prufer::Element::parse(x_literal));
    const auto [lo, hi] = parse_range(range);
    const prufer::CircleValue eps = prufer::CircleValue::parse(eps_txt);
    const prufer::ClassifyReport r = prufer::classify_prefix(lo, hi, target, K, eps);
    params["epsilon"] = eps_txt;
    params["m_range"] = range;
    if (as_json) {
      emit(envelope("profile", params, prufer::classify_json(r),
                    r.disagreements.empty() ? "pass" : "fail"));
      return r.disagreements.empty() ? 0 : 1;
    }
    std::cout << "accepted: ";
    for (long long m : r.accepted) std::cout << m << " ";
    std::cout << "\nrejected: " << r.rejected.size() << " characters\n";
    std::cout << "disagreements with the exact classifier: " << r.disagreements.size() << "\n";
    return r.disagreements.empty() ? 0 : 1;
  }

  const prufer::Character chi = prufer::Character::parse(chi_txt);
  const prufer::Sequence seq = make_sequence(seq_name, x_literal);
  params["chi"] = chi.str();
  const auto norms = prufer::tail_profile(chi, seq, K);
  json result{{"norms", prufer::profile_json(norms)}};
  if (!chi.is_padic() && !x_literal.empty()) {
    const auto target = prufer::RadicalTarget::of(prufer::Element::parse(x_literal));
    result["converges_exact"] = prufer::converges_exact(chi.coefficient(), target);
  }
  if (chi.is_padic() && seq_name == "e") {
    const prufer::PadicProbeReport probe =
        prufer::nonconvergent_padic_probe(chi.coefficient(), chi.precision(), K);
    result["probe"] = prufer::probe_json(probe);
  }
  if (as_json) {
    emit(envelope("profile", params, result, "info"));
    return 0;
  }
  for (const auto& [k, norm] : norms)
    std::cout << "k = " << k << ": |chi(" << seq_name << "_" << k << ")| = " << norm.str() << "\n";
  if (result.contains("converges_exact"))
    std::cout << "exact classification: "
              << (result["converges_exact"].get<bool>() ? "converges" : "does not converge")
              << "\n";
  if (result.contains("probe"))
    std::cout << "probe: max tail norm " << result["probe"]["max_tail_norm"].get<std::string>()
              << (result["probe"]["looks_nonconvergent"].get<bool>()
                      ? " (>= 1/4: looks nonconvergent; not conclusive)"
                      : " (decays within the window; not conclusive)")
              << "\n";
  return 0;
}

// ---- verify-paper ---------------------------------------------------

int run_verify(bool full, bool as_json) {
  prufer::verify::Profile profile;
  profile.full = full;
  const auto results = prufer::verify::run_all(profile);
  bool all_pass = true;
  for (const auto& r : results) all_pass = all_pass && r.pass;
  if (as_json) {
    json rows = json::array();
    for (const auto& r : results)
      rows.push_back(json{{"detail", r.detail}, {"id", r.id}, {"name", r.name}, {"pass", r.pass}});
    emit(envelope("verify-paper", json{{"profile", full ? "full" : "quick"}},
                  json{{"criteria", rows}}, all_pass ? "pass" : "fail"));
  } else {
    for (const auto& r : results)
      std::printf("[%s] %d. %s — %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                  r.detail.empty() ? "violated" : r.detail.c_str(), r.seconds);
    std::printf("verdict: %s\n", all_pass ? "pass" : "FAIL");
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Prüfer-group arithmetic, canonical forms and T-sequence certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "emit a deterministic JSON report");

  std::string elem, combo, seq_name = "e", x_literal, chi_txt, range = "-16..16",
                          eps_txt = "1/2^8";
  std::uint64_t l = 1, m_opt = 0, M = 8, n = 0, count = 8, level = 6, K = 8, m_cap = 0, laws = 6;
  long long p = 2;
  bool find_m0 = false, full = false, quick = false, residues = false, classify = false;
  bool m_given = false;

  auto* canon = app.add_subcommand("canon", "canonical form of an element or combination");
  canon->fallthrough();
  canon->add_option("element", elem, "element literal a/p^n");
  canon->add_option("--combo", combo, "combination JSON {\"seq\":\"e\",\"terms\":[{\"k\":..,\"m\":..}]}");

  auto* order = app.add_subcommand("order", "order of an element");
  order->fallthrough();
  order->add_option("element", elem, "element literal a/p^n")->required();

  auto* aset = app.add_subcommand("aset", "enumerate a truncated combination window");
  aset->fallthrough();
  aset->add_option("--seq", seq_name, "sequence: e, b or d")->capture_default_str();
  aset->add_option("--x", x_literal, "target element for b/d");
  aset->add_option("--l", l, "weight budget")->required();
  aset->add_option("--m", m_opt, "minimum index")->check(CLI::PositiveNumber);
  aset->add_option("--M", M, "maximum index (truncation)")->required();
  aset->add_option("--p", p, "prime for seq e")->capture_default_str();

  auto* tcheck = app.add_subcommand("tcheck", "torsion-intersection check on a window");
  tcheck->fallthrough();
  tcheck->add_option("--seq", seq_name, "sequence: e, b or d")->capture_default_str();
  tcheck->add_option("--x", x_literal, "target element for b/d");
  tcheck->add_option("--l", l, "weight budget")->required();
  tcheck->add_option("--n", n, "torsion exponent: checks against A[2^n]")->required();
  tcheck->add_option("--M", M, "maximum index (truncation)")->required();
  tcheck->add_option("--m", m_opt, "minimum index")->check(CLI::PositiveNumber);
  tcheck->add_flag("--find-m0", find_m0, "search the smallest empty-window m");
  tcheck->add_option("--m-cap", m_cap, "search bound for --find-m0 (default M)");

  auto* construct = app.add_subcommand("construct", "emit sequence terms with their orders");
  construct->fallthrough();
  construct->add_option("--seq", seq_name, "sequence: e, b or d")->capture_default_str();
  construct->add_option("--x", x_literal, "target element for b/d");
  construct->add_option("--count", count, "number of terms")->capture_default_str();

  auto* certify = app.add_subcommand("certify", "full T-sequence certificate bundle");
  certify->fallthrough();
  certify->add_option("--x", x_literal, "target element")->required();
  certify->add_option("--l", l, "weight budget")->required();
  certify->add_option("--n", n, "torsion exponent")->required();
  certify->add_option("--M", M, "maximum index (truncation)")->required();
  certify->add_option("--laws", laws, "number of order laws beyond k0")->capture_default_str();

  auto* radical = app.add_subcommand("radical", "kernel intersection at a finite level");
  radical->fallthrough();
  radical->add_option("--x", x_literal, "target element")->required();
  radical->add_option("--m-range", range, "character range lo..hi")->capture_default_str();
  radical->add_option("--level", level, "torsion level N (inside <e_N>)")->required();
  radical->add_flag("--residues", residues, "include the subgroup residues in the report");

  auto* profile = app.add_subcommand("profile", "character norms along a sequence");
  profile->fallthrough();
  profile->add_option("--chi", chi_txt, "character m:<int> or padic:<residue>@<precision>");
  profile->add_option("--seq", seq_name, "sequence: e, b or d")->capture_default_str();
  profile->add_option("--x", x_literal, "target element for b/d");
  profile->add_option("--K", K, "prefix length")->required();
  profile->add_flag("--classify", classify, "classify m-characters over a range instead");
  profile->add_option("--m-range", range, "range for --classify")->capture_default_str();
  profile->add_option("--eps", eps_txt, "threshold for --classify")->capture_default_str();

  auto* verify = app.add_subcommand("verify-paper", "run the acceptance criteria");
  verify->fallthrough();
  verify->add_flag("--quick", quick, "desk scale (default)");
  verify->add_flag("--full", full, "roughly doubled caps");

  try {
    app.parse(argc, argv);
    m_given = aset->count("--m") > 0 || tcheck->count("--m") > 0;

    if (canon->parsed()) {
      if (elem.empty() == combo.empty())
        throw std::invalid_argument("canon takes exactly one of an element literal or --combo");
      return run_canon(elem, combo, as_json);
    }
    if (order->parsed()) return run_order(elem, as_json);
    if (aset->parsed())
      return run_aset(seq_name, x_literal, l, m_given ? m_opt : 1, M, p, as_json);
    if (tcheck->parsed())
      return run_tcheck(seq_name, x_literal, l, n, M,
                        m_given ? std::optional<std::uint64_t>(m_opt) : std::nullopt, find_m0,
                        m_cap, as_json);
    if (construct->parsed()) return run_construct(seq_name, x_literal, count, as_json);
    if (certify->parsed()) return run_certify(x_literal, l, n, M, laws, as_json);
    if (radical->parsed()) return run_radical(x_literal, range, level, residues, as_json);
    if (profile->parsed())
      return run_profile(chi_txt, seq_name, x_literal, K, classify, range, eps_txt, as_json);
    if (verify->parsed()) return run_verify(full, as_json);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const prufer::resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 2;
  } catch (const prufer::json::exception& e) {
    std::cerr << "malformed JSON input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
