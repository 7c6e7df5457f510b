// Command-line workbench for gram-profile codes: profiles and distances,
// restricted de Bruijn graph reports, exact lattice-point counts and Ehrhart
// fits, code construction, and the storage-channel simulator.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "gramcode/acceptance.hpp"
#include "gramcode/channel.hpp"
#include "gramcode/codes.hpp"
#include "gramcode/euler.hpp"
#include "gramcode/json_io.hpp"
#include "gramcode/lattice.hpp"

using namespace gramcode;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;
constexpr int kExitMismatch = 4;

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kValidation:
      return kExitValidation;
    case ErrorKind::kBudget:
      return kExitBudget;
    case ErrorKind::kMismatch:
      return kExitMismatch;
    case ErrorKind::kInternal:
      return 1;
  }
  return 1;
}

Budget budget_from_env() {
  Budget b;
  if (const char* v = std::getenv("GRAMCODE_MAX_NODES"))
    b.max_enum_nodes = std::strtoull(v, nullptr, 10);
  if (const char* v = std::getenv("GRAMCODE_MAX_CYCLES"))
    b.max_cycles = std::strtoull(v, nullptr, 10);
  if (const char* v = std::getenv("GRAMCODE_MAX_WORDS"))
    b.max_words = std::strtoull(v, nullptr, 10);
  return b;
}

struct GramSetArgs {
  int q = 2;
  int ell = 2;
  std::optional<int> qstar;
  std::optional<int> w1;
  std::optional<int> w2;
  std::string file;

  void attach(CLI::App* cmd) {
    cmd->add_option("--q", q, "alphabet size");
    cmd->add_option("--ell", ell, "gram length");
    auto* qs = cmd->add_option("--qstar", qstar, "weight alphabet split");
    auto* o1 = cmd->add_option("--w1", w1, "minimum gram weight");
    auto* o2 = cmd->add_option("--w2", w2, "maximum gram weight");
    auto* f = cmd->add_option("--gramset", file, "gram set JSON file");
    f->excludes(qs)->excludes(o1)->excludes(o2);
  }

  GramSet build() const {
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw validation_error("cannot open gram set file " + file);
      Json j;
      in >> j;
      return gramset_from_json(j);
    }
    if (qstar || w1 || w2) {
      if (!(qstar && w1 && w2))
        throw validation_error("--qstar, --w1, --w2 must be given together");
      return GramSet::weight_restricted(q, ell, *qstar, *w1, *w2);
    }
    return GramSet::full(q, ell);
  }
};

void emit(const Json& j, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_file);
    out << j.dump(2) << "\n";
  }
}

void write_text(const std::string& text, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_file);
    out << text;
  }
}

std::vector<std::int64_t> parse_int_list(const std::string& csv) {
  std::vector<std::int64_t> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      out.push_back(std::stoll(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::stoll(cur));
  return out;
}

Word parse_word(const std::string& text, bool dna, int q) {
  return dna ? Word::from_dna(text) : Word::from_string(q, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gram-profile code workbench"};
  app.require_subcommand(1);
  Budget budget = budget_from_env();

  // ---- profile ----------------------------------------------------------
  auto* profile_cmd =
      app.add_subcommand("profile", "profile vector of a word");
  GramSetArgs profile_gs;
  profile_gs.attach(profile_cmd);
  std::string profile_word;
  bool profile_dna = false;
  profile_cmd->add_option("--word", profile_word, "the word")->required();
  profile_cmd->add_flag("--dna", profile_dna, "word uses A,T,G,C letters");

  // ---- graph ------------------------------------------------------------
  auto* graph_cmd =
      app.add_subcommand("graph", "restricted de Bruijn graph report");
  GramSetArgs graph_gs;
  graph_gs.attach(graph_cmd);
  std::string graph_dot;
  bool graph_report = true;
  graph_cmd->add_option("--dot", graph_dot, "write Graphviz DOT here");
  graph_cmd->add_flag("--report,!--no-report", graph_report,
                      "include the analysis block");

  // ---- count ------------------------------------------------------------
  auto* count_cmd =
      app.add_subcommand("count", "exact lattice-point count at dilation t");
  GramSetArgs count_gs;
  count_gs.attach(count_cmd);
  std::int64_t count_t = 1;
  bool count_interior = false;
  std::string count_alpha, count_beta, count_aecc_file;
  std::int64_t count_p = 0;
  int count_d = 0;
  count_cmd->add_option("--t", count_t, "dilation (n - ell + 1)")->required();
  count_cmd->add_flag("--interior", count_interior, "count u > 0");
  std::int64_t count_sweep_to = 0;
  std::string count_out;
  count_cmd->add_option("--sweep-to", count_sweep_to,
                        "emit CSV of counts for t..sweep-to");
  count_cmd->add_option("--out", count_out, "write the sweep CSV here");
  count_cmd->add_option("--grc-p", count_p, "congruence modulus");
  count_cmd->add_option("--grc-d", count_d, "number of congruence rows");
  count_cmd->add_option("--grc-alpha", count_alpha,
                        "comma-separated alpha list");
  count_cmd->add_option("--grc-beta", count_beta,
                        "comma-separated beta residues");
  count_cmd->add_option("--aecc", count_aecc_file, "AECC spec JSON file");

  // ---- ehrhart ----------------------------------------------------------
  auto* ehrhart_cmd = app.add_subcommand(
      "ehrhart", "fit the counting quasipolynomial on the residue-0 class");
  GramSetArgs ehrhart_gs;
  ehrhart_gs.attach(ehrhart_cmd);
  int ehrhart_K = 0;
  bool ehrhart_interior = false;
  std::string ehrhart_expect;
  std::int64_t ehrhart_lambda = 0;
  ehrhart_cmd->add_option("--K", ehrhart_K,
                          "number of samples (default degree+2)");
  ehrhart_cmd->add_flag("--interior", ehrhart_interior, "fit u > 0 counts");
  ehrhart_cmd->add_option("--lambda", ehrhart_lambda,
                          "period override (default: cycle-length lcm)");
  ehrhart_cmd->add_option("--expect-c", ehrhart_expect,
                          "expected normalized leading coefficient num/den");

  // ---- euler ------------------------------------------------------------
  auto* euler_cmd =
      app.add_subcommand("euler", "decode a profile vector to its word");
  GramSetArgs euler_gs;
  euler_gs.attach(euler_cmd);
  std::string euler_counts;
  bool euler_dna_out = false;
  euler_cmd->add_option("--counts", euler_counts, "comma-separated counts")
      ->required();
  euler_cmd->add_flag("--dna", euler_dna_out, "print the word as DNA");

  // ---- code -------------------------------------------------------------
  auto* code_cmd = app.add_subcommand("code", "code constructions");
  code_cmd->require_subcommand(1);

  auto* alpha_cmd = code_cmd->add_subcommand(
      "alpha", "search the smallest alpha for a congruence code");
  int alpha_N = 0, alpha_d = 0;
  std::int64_t alpha_p = 0;
  bool alpha_all_ones = false;
  alpha_cmd->add_option("--N", alpha_N)->required();
  alpha_cmd->add_option("--d", alpha_d)->required();
  alpha_cmd->add_option("--p", alpha_p)->required();
  alpha_cmd->add_flag("--all-ones", alpha_all_ones,
                      "require the all-ones vector in the code");

  auto* intersect_cmd = code_cmd->add_subcommand(
      "intersect", "codebook = congruence code intersected with profiles");
  GramSetArgs intersect_gs;
  intersect_gs.attach(intersect_cmd);
  std::size_t intersect_n = 0;
  std::int64_t intersect_p = 0;
  int intersect_d = 0;
  std::string intersect_alpha, intersect_beta, intersect_out,
      intersect_source = "interior", intersect_preset;
  bool intersect_verify = false;
  intersect_cmd->add_option("--n", intersect_n, "word length");
  intersect_cmd->add_option("--p", intersect_p);
  intersect_cmd->add_option("--d", intersect_d);
  intersect_cmd->add_option("--alpha", intersect_alpha);
  intersect_cmd->add_option("--beta", intersect_beta);
  intersect_cmd->add_option("--source", intersect_source,
                            "interior | exhaustive");
  intersect_cmd->add_option("--preset", intersect_preset,
                            "pgrc8-p13: the distance-3 code on [2]^3, n=158");
  intersect_cmd->add_flag("--verify", intersect_verify,
                          "brute-force the realized minimum distance");
  intersect_cmd->add_option("--out", intersect_out, "write codebook JSON");

  auto* systematic_cmd = code_cmd->add_subcommand(
      "systematic", "systematic profile encoding of a message");
  GramSetArgs systematic_gs;
  systematic_gs.attach(systematic_cmd);
  std::size_t systematic_n = 0;
  Count systematic_m = 0;
  std::string systematic_v;
  systematic_cmd->add_option("--n", systematic_n, "word length")->required();
  systematic_cmd->add_option("--m", systematic_m,
                             "message alphabet (default: inferred)");
  systematic_cmd->add_option("--v", systematic_v, "comma-separated message")
      ->required();

  auto* rankmod_cmd = code_cmd->add_subcommand(
      "rankmod", "permutation -> profile -> word pipeline");
  GramSetArgs rankmod_gs;
  rankmod_gs.attach(rankmod_cmd);
  std::size_t rankmod_n = 0;
  std::string rankmod_perm;
  rankmod_cmd->add_option("--n", rankmod_n, "word length")->required();
  rankmod_cmd->add_option("--perm", rankmod_perm, "comma-separated permutation")
      ->required();

  auto* verify_cmd =
      code_cmd->add_subcommand("verify", "verify a codebook's distance");
  std::string verify_book;
  verify_cmd->add_option("--book", verify_book, "codebook JSON")->required();

  // ---- channel ----------------------------------------------------------
  auto* channel_cmd = app.add_subcommand("channel", "storage channel");
  channel_cmd->require_subcommand(1);

  auto* transmit_cmd =
      channel_cmd->add_subcommand("transmit", "corrupt one word");
  std::string transmit_word;
  bool transmit_dna = false;
  int transmit_q = 2, transmit_ell = 2, transmit_ssyn = 0, transmit_sseq = 0,
      transmit_t = 0;
  std::uint64_t transmit_seed = 0;
  transmit_cmd->add_option("--word", transmit_word)->required();
  transmit_cmd->add_flag("--dna", transmit_dna);
  transmit_cmd->add_option("--q", transmit_q);
  transmit_cmd->add_option("--ell", transmit_ell)->required();
  transmit_cmd->add_option("--s-syn", transmit_ssyn);
  transmit_cmd->add_option("--s-seq", transmit_sseq);
  transmit_cmd->add_option("--t-under", transmit_t);
  transmit_cmd->add_option("--seed", transmit_seed);

  auto* campaign_cmd =
      channel_cmd->add_subcommand("campaign", "seeded decoding campaign");
  std::string campaign_book, campaign_grid, campaign_out;
  std::uint64_t campaign_trials = 1000, campaign_seed = 0;
  campaign_cmd->add_option("--book", campaign_book, "codebook JSON")
      ->required();
  campaign_cmd
      ->add_option("--grid", campaign_grid,
                   "cells s_syn,s_seq,t separated by ';'")
      ->required();
  campaign_cmd->add_option("--trials", campaign_trials);
  campaign_cmd->add_option("--seed", campaign_seed);
  campaign_cmd->add_option("--out", campaign_out, "write CSV here");

  // ---- acceptance -------------------------------------------------------
  auto* acceptance_cmd = app.add_subcommand(
      "acceptance", "run the built-in verification suite");
  AcceptanceOptions acc_opts;
  acceptance_cmd->add_option("--fit-budget-seconds",
                             acc_opts.fit_budget_seconds);
  acceptance_cmd->add_option("--trials", acc_opts.channel_trials);
  bool acc_serial = false;
  acceptance_cmd->add_flag("--serial", acc_serial);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitValidation;
  }

  try {
    if (profile_cmd->parsed()) {
      if (profile_dna && profile_cmd->count("--q") == 0) profile_gs.q = 4;
      GramSet s = profile_gs.build();
      Word w = parse_word(profile_word, profile_dna,
                          profile_dna ? 4 : profile_gs.q);
      ProfileVector p = profile(w, s);
      Json j = profile_to_json(s, p.counts);
      j["n"] = w.size();
      emit(j, "");
    } else if (graph_cmd->parsed()) {
      GramSet s = graph_gs.build();
      DeBruijnGraph d(s);
      Json j = graph_to_json(d);
      if (graph_report) {
        GrowthReport rep = growth_report(s, budget);
        j["eulerian"] = is_eulerian(d);
        j["strongly_connected"] = rep.strongly_connected;
        j["scc_count"] = scc_partition(d).size();
        auto ham = d.node_count() <= budget.hamiltonian_node_cap ||
                           s.is_full()
                       ? find_hamiltonian_cycle(d, budget)
                       : std::nullopt;
        j["hamiltonian"] = ham.has_value();
        if (rep.strongly_connected) {
          j["degree"] = rep.degree;
          if (rep.lambda) j["lambda"] = *rep.lambda;
        } else {
          j["delta_bar"] = rep.delta_bar;
          j["delta"] = rep.delta_all;
        }
      }
      if (!graph_dot.empty()) write_text(graph_to_dot(d), graph_dot);
      emit(j, "");
    } else if (count_cmd->parsed()) {
      GramSet s = count_gs.build();
      auto graph = std::make_shared<DeBruijnGraph>(s);
      Strictness strict =
          count_interior ? Strictness::kInterior : Strictness::kBoundary;
      std::optional<GrcBlock> grc;
      if (!count_aecc_file.empty()) {
        std::ifstream in(count_aecc_file);
        Json j;
        in >> j;
        AeccSpec spec = aecc_from_json(j);
        grc = GrcBlock{spec.h, spec.p, spec.beta};
      } else if (count_p > 0) {
        AeccSpec spec = AeccSpec::make(
            static_cast<int>(s.size()), count_d, count_p,
            count_alpha.empty() ? find_alpha(static_cast<int>(s.size()),
                                             count_d, count_p, true)
                                : parse_int_list(count_alpha),
            count_beta.empty() ? std::vector<std::int64_t>{}
                               : parse_int_list(count_beta));
        grc = GrcBlock{spec.h, spec.p, spec.beta};
      }
      if (count_sweep_to >= count_t) {
        std::vector<std::pair<std::int64_t, std::int64_t>> rows;
        for (std::int64_t t = count_t; t <= count_sweep_to; ++t) {
          LatticeSystem sys = grc ? build_system_grc(graph, *grc, t, strict)
                                  : build_system(graph, t, strict);
          rows.push_back({t, count_points(sys, budget)});
        }
        write_text(sweep_csv(rows), count_out);
      } else {
        LatticeSystem sys =
            grc ? build_system_grc(graph, *grc, count_t, strict)
                : build_system(graph, count_t, strict);
        std::cout << count_points(sys, budget) << "\n";
      }
    } else if (ehrhart_cmd->parsed()) {
      GramSet s = ehrhart_gs.build();
      auto graph = std::make_shared<DeBruijnGraph>(s);
      int degree = dimension(s);
      FitRequest req;
      req.graph = graph;
      req.degree = degree;
      req.lambda =
          ehrhart_lambda > 0 ? ehrhart_lambda : lambda_value(*graph, budget);
      req.samples = ehrhart_K > 0 ? ehrhart_K : degree + 2;
      req.strictness =
          ehrhart_interior ? Strictness::kInterior : Strictness::kBoundary;
      req.budget = budget;
      Quasipolynomial q = fit_quasipolynomial(req);
      Json j = quasipoly_to_json(q);
      j["dimension"] = degree;
      emit(j, "");
      if (!ehrhart_expect.empty() &&
          q.leading_normalized() != Rational::from_string(ehrhart_expect)) {
        std::cerr << "leading coefficient mismatch: fitted "
                  << q.leading_normalized().to_string() << ", expected "
                  << ehrhart_expect << "\n";
        return kExitMismatch;
      }
    } else if (euler_cmd->parsed()) {
      GramSet s = euler_gs.build();
      std::vector<std::int64_t> counts = parse_int_list(euler_counts);
      DeBruijnGraph d(s);
      Word w = euler_decode(d, counts);
      std::cout << (euler_dna_out ? w.to_dna() : w.to_string()) << "\n";
    } else if (alpha_cmd->parsed()) {
      auto alpha = find_alpha(alpha_N, alpha_d, alpha_p, alpha_all_ones);
      AeccSpec spec = AeccSpec::make(alpha_N, alpha_d, alpha_p, alpha);
      emit(aecc_to_json(spec), "");
    } else if (intersect_cmd->parsed()) {
      std::shared_ptr<const GramSet> s;
      AeccSpec spec;
      std::size_t n = intersect_n;
      if (intersect_preset == "pgrc8-p13") {
        s = std::make_shared<const GramSet>(GramSet::full(2, 3));
        spec = AeccSpec::make(8, 2, 13, {1, 2, 3, 5, 8, 10, 11, 12});
        if (n == 0) n = 158;
      } else if (intersect_preset.empty()) {
        s = std::make_shared<const GramSet>(intersect_gs.build());
        if (n == 0) throw validation_error("--n is required");
        spec = AeccSpec::make(
            static_cast<int>(s->size()), intersect_d, intersect_p,
            intersect_alpha.empty()
                ? find_alpha(static_cast<int>(s->size()), intersect_d,
                             intersect_p, true)
                : parse_int_list(intersect_alpha),
            intersect_beta.empty() ? std::vector<std::int64_t>{}
                                   : parse_int_list(intersect_beta));
      } else {
        throw validation_error("unknown preset " + intersect_preset);
      }
      IntersectionSource source = intersect_source == "exhaustive"
                                      ? IntersectionSource::kExhaustive
                                      : IntersectionSource::kInterior;
      GrcCodebook book = grc_by_intersection(spec, n, s, source, budget);
      if (intersect_verify)
        book.verified_distance = grc_min_distance(book, budget);
      Json j = codebook_to_json(book);
      j["size"] = book.profiles.size();
      emit(j, intersect_out);
      if (!intersect_out.empty())
        std::cout << "codebook of " << book.profiles.size() << " written to "
                  << intersect_out << "\n";
    } else if (systematic_cmd->parsed()) {
      auto s = std::make_shared<const GramSet>(systematic_gs.build());
      std::vector<std::int64_t> v = parse_int_list(systematic_v);
      Count m = systematic_m;
      if (m == 0) {
        for (std::int64_t x : v) m = std::max<Count>(m, x + 1);
      }
      SystematicLayout layout = systematic_layout(s, systematic_n, m, budget);
      std::vector<Count> u = systematic_encode(std::span<const Count>(v),
                                               layout);
      DeBruijnGraph d(*s);
      Word w = euler_decode(d, u);
      Json j = profile_to_json(*s, u);
      j["word"] = w.to_string();
      j["free_coordinates"] = [&] {
        Json arr = Json::array();
        for (int e : layout.free_coords) arr.push_back(s->gram(e).to_string());
        return arr;
      }();
      emit(j, "");
    } else if (rankmod_cmd->parsed()) {
      auto s = std::make_shared<const GramSet>(rankmod_gs.build());
      std::vector<std::int64_t> perm = parse_int_list(rankmod_perm);
      SystematicLayout layout = systematic_layout(
          s, rankmod_n, static_cast<Count>(perm.size()), budget);
      Word w = rank_mod_pipeline(std::span<const Count>(perm), layout);
      Json j;
      j["word"] = w.to_string();
      j["recovered_ranking"] = recover_ranking(w, layout);
      emit(j, "");
    } else if (verify_cmd->parsed()) {
      std::ifstream in(verify_book);
      if (!in) throw validation_error("cannot open " + verify_book);
      Json j;
      in >> j;
      GrcCodebook book = codebook_from_json(j);
      Count d = grc_min_distance(book, budget);
      Json out;
      out["size"] = book.profiles.size();
      out["claimed_distance"] = book.claimed_distance;
      out["verified_distance"] = d;
      emit(out, "");
      if (d < book.claimed_distance) return kExitMismatch;
    } else if (transmit_cmd->parsed()) {
      Word w = parse_word(transmit_word, transmit_dna,
                          transmit_dna ? 4 : transmit_q);
      ChannelConfig cfg{transmit_ssyn, transmit_sseq, transmit_t,
                        transmit_seed};
      ChannelOutput out = transmit(w, cfg, transmit_ell);
      Json j;
      j["observed"] = out.observed;
      j["total"] = out.total();
      Json audit;
      audit["synthesis"] = Json::array();
      for (const auto& s : out.synthesis_trace)
        audit["synthesis"].push_back({{"position", s.position},
                                      {"from", int(s.from)},
                                      {"to", int(s.to)}});
      audit["undersampled"] = out.undersampled_fragments;
      audit["sequencing"] = Json::array();
      for (const auto& e : out.sequencing_trace)
        audit["sequencing"].push_back({{"fragment", e.fragment},
                                       {"offset", e.offset},
                                       {"from", int(e.from)},
                                       {"to", int(e.to)}});
      j["audit"] = audit;
      emit(j, "");
    } else if (campaign_cmd->parsed()) {
      std::ifstream in(campaign_book);
      if (!in) throw validation_error("cannot open " + campaign_book);
      Json j;
      in >> j;
      GrcCodebook book = codebook_from_json(j);
      std::vector<CampaignCell> grid;
      std::string cur;
      auto flush = [&] {
        if (cur.empty()) return;
        auto nums = parse_int_list(cur);
        if (nums.size() != 3)
          throw validation_error("grid cells need s_syn,s_seq,t");
        grid.push_back({static_cast<int>(nums[0]), static_cast<int>(nums[1]),
                        static_cast<int>(nums[2])});
        cur.clear();
      };
      for (char c : campaign_grid) {
        if (c == ';')
          flush();
        else
          cur.push_back(c);
      }
      flush();
      auto rows = run_campaign(book, grid, campaign_trials, campaign_seed);
      write_text(campaign_csv(rows), campaign_out);
    } else if (acceptance_cmd->parsed()) {
      acc_opts.parallel = !acc_serial;
      int failed = report_acceptance(run_acceptance(acc_opts));
      return failed == 0 ? 0 : kExitMismatch;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
