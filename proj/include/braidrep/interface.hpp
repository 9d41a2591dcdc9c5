#ifndef BRAIDREP_INTERFACE_HPP
#define BRAIDREP_INTERFACE_HPP

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "analysis.hpp"
#include "braid_rep.hpp"
#include "conjugacy.hpp"
#include "coset_action.hpp"
#include "error.hpp"
#include "permutation.hpp"
#include "search.hpp"

namespace braidrep::cli {

enum ExitCode : int { ok = 0, verification_failed = 1, usage_error = 2 };

class IoError : public Error {
public:
  using Error::Error;
};

/// Raised by a subcommand whose input is well-formed but fails the check it
/// asked for. The message goes to stderr, the exit code is 1.
class VerificationFailure : public Error {
public:
  using Error::Error;
};

/// Inline JSON if the argument starts with '{', otherwise a file path.
inline nlohmann::json load_json(const std::string& arg)
{
  std::string text;
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') {
    text = arg;
  } else {
    std::ifstream in(arg);
    if (!in)
      throw IoError("cannot open " + arg);
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("invalid JSON in " + (text == arg ? std::string("argument") : arg) + ": " + e.what());
  }
}

inline std::vector<Permutation> subgroup_from_json(const nlohmann::json& j)
{
  detail::require_keys(j, {"degree", "generators"}, "subgroup");
  try {
    const auto n = j.at("degree").get<std::size_t>();
    std::vector<Permutation> gens;
    for (const auto& g : j.at("generators"))
      gens.push_back(Permutation::from_cycles(n, g.get<std::vector<Cycle>>()));
    return gens;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad subgroup JSON: ") + e.what());
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

namespace detail {

inline void print_rep(std::ostream& out, const BraidRep& rep)
{
  out << "strands " << rep.strands() << ", degree " << rep.degree() << "\n";
  for (std::size_t i = 1; i < rep.strands(); ++i)
    out << "s" << i << " = " << format_cycles(rep.gen(i)) << "\n";
}

inline nlohmann::json relation_json(const RelationReport& r)
{
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& f : r.failures)
    fails.push_back({{"relation", f.kind == RelationFailure::Kind::braid ? "braid" : "commute"},
                     {"i", f.i},
                     {"j", f.j}});
  return {{"homomorphism", r.ok()}, {"failures", fails}};
}

inline void print_report(std::ostream& out, const SearchReport& r)
{
  out << r.kind << ": " << r.verdict() << "\n";
  out << "  candidates " << r.candidates << ", passes " << r.passes << ", failures " << r.failures << "\n";
  if (r.seed)
    out << "  seed " << *r.seed << "\n";
  for (const auto& c : r.counterexamples)
    out << "  counterexample " << c << "\n";
}

} // namespace detail

/// Runs one command line (without the program name). Output goes to out,
/// diagnostics to err; the return value is the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Braid group permutation representations B_k -> S_n", "braidrep"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable JSON output");

  // construct
  auto* construct = app.add_subcommand("construct", "Build a model representation");
  bool c_psi = false, c_mu = false, c_phi = false;
  int c_lin = 0;
  std::size_t c_m = 1, c_k = 2;
  std::string c_model;
  auto* o_psi = construct->add_flag("--psi", c_psi, "psi_m");
  auto* o_mu = construct->add_flag("--mu", c_mu, "canonical mu_k");
  auto* o_lin = construct->add_option("--lin", c_lin, "Lin's model 1, 2 or 3")->check(CLI::Range(1, 3));
  auto* o_phi = construct->add_flag("--phi", c_phi, "phi_{m,l,t} from --model");
  construct->add_option("--m", c_m, "Block size")->check(CLI::PositiveNumber);
  construct->add_option("--k", c_k, "Strands")->check(CLI::Range(2, 1000));
  auto* o_model = construct->add_option("--model", c_model, "ModelParams JSON or file");
  o_psi->excludes(o_mu, o_lin, o_phi);
  o_mu->excludes(o_lin, o_phi);
  o_lin->excludes(o_phi);
  o_phi->needs(o_model);

  auto* verify = app.add_subcommand("verify", "Check the braid relations");
  std::string v_rep;
  verify->add_option("--rep", v_rep, "BraidRep JSON or file")->required();

  auto* analyze_cmd = app.add_subcommand("analyze", "Structural statistics");
  std::string a_rep;
  analyze_cmd->add_option("--rep", a_rep, "BraidRep JSON or file")->required();

  auto* normalize = app.add_subcommand("normalize", "Normal form of a phi model");
  std::string n_model;
  normalize->add_option("--model", n_model, "ModelParams JSON or file")->required();

  auto* conj = app.add_subcommand("conjugate", "Search for a conjugator between two representations");
  std::string j_a, j_b;
  conj->add_option("--a", j_a, "BraidRep JSON or file")->required();
  conj->add_option("--b", j_b, "BraidRep JSON or file")->required();

  auto* derive = app.add_subcommand("derive", "Action on the cosets of a subgroup");
  std::string d_rep, d_subgroup;
  bool d_young2 = false;
  std::size_t d_k = 3;
  std::size_t d_limit = default_group_limit;
  auto* o_drep = derive->add_option("--rep", d_rep, "BraidRep JSON or file");
  auto* o_dsub = derive->add_option("--subgroup", d_subgroup, "Subgroup JSON or file");
  auto* o_young = derive->add_flag("--young2", d_young2, "mu_k acting on cosets of S_2 x S_{k-2}");
  auto* o_dk = derive->add_option("--k", d_k, "Strands for --young2")->check(CLI::Range(3, 12));
  derive->add_option("--limit", d_limit, "Bound on subgroup order and index")->check(CLI::PositiveNumber);
  o_young->excludes(o_drep, o_dsub);
  o_young->needs(o_dk);
  o_drep->needs(o_dsub);
  o_dsub->needs(o_drep);

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate t-tables for (m, l, k)");
  std::size_t e_m = 1, e_l = 1, e_k = 2;
  bool e_brute = false, e_list = false;
  enumerate->add_option("--m", e_m, "Block size")->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--l", e_l, "Inner block size, dividing m")->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--k", e_k, "Strands")->required()->check(CLI::Range(2, 1000));
  enumerate->add_flag("--brute", e_brute, "Filter every table through the braid relations");
  enumerate->add_flag("--list", e_list, "Include the tables in the output");

  auto* standardize = app.add_subcommand("standardize", "Conjugate a supp = 2m representation onto psi_m");
  std::string s_rep;
  standardize->add_option("--rep", s_rep, "BraidRep JSON or file")->required();

  auto* census = app.add_subcommand("census-m3", "Random round trips through the degree-3k classes");
  std::size_t m3_k = 9, m3_trials = 20;
  std::uint64_t m3_seed = 1;
  census->add_option("--k", m3_k, "Strands")->required()->check(CLI::Range(3, 40));
  census->add_option("--trials", m3_trials, "Number of random representations")->required()->check(CLI::PositiveNumber);
  census->add_option("--seed", m3_seed, "RNG seed")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    if (!args.empty() && args.front().rfind("-", 0) != 0 && app.get_subcommand_no_throw(args.front()) == nullptr)
      err << "error: unknown subcommand '" << args.front() << "'\n";
    else
      err << "error: " << e.what() << "\n";
    return usage_error;
  }

  auto emit = [&](const nlohmann::json& j, auto&& human) {
    if (as_json)
      out << j.dump() << "\n";
    else
      human();
  };

  try {
    if (construct->parsed()) {
      std::optional<BraidRep> rep;
      if (c_psi)
        rep = psi(c_m, c_k);
      else if (c_mu)
        rep = canonical_mu(c_k);
      else if (c_lin != 0)
        rep = lin_model(c_lin, c_k);
      else if (c_phi)
        rep = phi(load_json(c_model).get<ModelParams>());
      else
        throw CLI::ValidationError("construct needs one of --psi, --mu, --lin, --phi");
      emit(*rep, [&] { detail::print_rep(out, *rep); });
      return ok;
    }

    if (verify->parsed()) {
      const BraidRep rep = braid_rep_from_json(load_json(v_rep));
      const auto report = verify_braid_relations(rep);
      emit(detail::relation_json(report), [&] {
        if (report.ok())
          out << "braid relations hold\n";
        for (const auto& f : report.failures)
          out << "fails: " << f.describe() << "\n";
      });
      return report.ok() ? ok : verification_failed;
    }

    if (analyze_cmd->parsed()) {
      const BraidRep rep = braid_rep_from_json(load_json(a_rep));
      const AnalysisReport r = analyze(rep);
      emit(r, [&] {
        out << "supp        " << r.supp << "\n";
        out << "intersect   " << (r.intersect ? std::to_string(*r.intersect) : "-") << "\n";
        out << "goodness    " << to_string(r.goodness.kind) << "\n";
        out << "transitive  " << (r.transitive ? "yes" : "no") << "\n";
        out << "cyclic      " << (r.cyclic ? "yes" : "no") << "\n";
        out << "[s1]        " << r.cycle_type_gen1.to_string() << "\n";
      });
      return ok;
    }

    if (normalize->parsed()) {
      const auto params = load_json(n_model).get<ModelParams>();
      const NormalForm nf = normalize_model(params);
      emit(nf, [&] {
        out << "p = " << nf.p << "\n";
        out << "conjugator " << format_cycles(nf.conjugator) << "\n";
      });
      return ok;
    }

    if (conj->parsed()) {
      const BraidRep a = braid_rep_from_json(load_json(j_a));
      const BraidRep b = braid_rep_from_json(load_json(j_b));
      if (a.strands() != b.strands() || a.degree() != b.degree())
        throw ParseError("conjugate needs representations with equal strands and degree");
      const auto theta = are_conjugate(a, b);
      nlohmann::json j{{"conjugate", theta.has_value()},
                       {"conjugator", theta ? nlohmann::json(cycle_decomposition(*theta)) : nlohmann::json(nullptr)}};
      emit(j, [&] {
        if (theta)
          out << "conjugate via " << format_cycles(*theta) << "\n";
        else
          out << "not conjugate\n";
      });
      return theta ? ok : verification_failed;
    }

    if (derive->parsed()) {
      std::optional<BraidRep> result;
      if (d_young2) {
        result = derived_hom(canonical_mu(d_k), coset_space(d_k, young2_generators(d_k), d_limit));
      } else if (!d_rep.empty()) {
        const BraidRep rep = braid_rep_from_json(load_json(d_rep));
        auto gens = subgroup_from_json(load_json(d_subgroup));
        for (const auto& g : gens)
          if (g.degree() != rep.degree())
            throw ParseError("subgroup degree differs from the representation degree");
        result = derived_hom(rep, coset_space(rep.degree(), std::move(gens), d_limit));
      } else {
        throw CLI::ValidationError("derive needs --rep/--subgroup or --young2 --k");
      }
      emit(*result, [&] { detail::print_rep(out, *result); });
      return ok;
    }

    if (enumerate->parsed()) {
      const auto mode = e_brute ? EnumerationMode::by_brute_force : EnumerationMode::by_condition;
      const auto res = enumerate_t_tables(e_m, e_l, e_k, mode, candidate_limit_from_env());
      nlohmann::json j = report_json(res.report);
      j["tables_found"] = res.tables.size();
      if (e_list)
        j["tables"] = res.tables;
      emit(j, [&] {
        detail::print_report(out, res.report);
        out << "  tables " << res.tables.size() << "\n";
        if (e_list)
          for (const auto& t : res.tables)
            out << "  " << nlohmann::json(t.t).dump() << "\n";
      });
      return res.report.confirmed() ? ok : verification_failed;
    }

    if (standardize->parsed()) {
      const BraidRep rep = braid_rep_from_json(load_json(s_rep));
      Permutation theta = Permutation::identity(1);
      try {
        theta = standardize_supp2m(rep);
      } catch (const PreconditionError& e) {
        throw VerificationFailure(std::string("cannot standardize: ") + e.what());
      }
      const std::size_t m = rep.degree() / rep.strands();
      emit(nlohmann::json{{"m", m}, {"k", rep.strands()}, {"conjugator", cycle_decomposition(theta)}}, [&] {
        out << "rep^theta = psi_" << m << " with theta = " << format_cycles(theta) << "\n";
      });
      return ok;
    }

    if (census->parsed()) {
      const SearchReport r = verify_m3_standardness(m3_k, m3_trials, m3_seed);
      emit(report_json(r), [&] { detail::print_report(out, r); });
      return r.confirmed() ? ok : verification_failed;
    }
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const VerificationFailure& e) {
    err << "error: " << e.what() << "\n";
    return verification_failed;
  } catch (const ConditionTError& e) {
    err << "error: " << e.what() << "\n";
    return verification_failed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }
  return usage_error;
}

} // namespace braidrep::cli

#endif
