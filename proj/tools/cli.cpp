#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "quadword/algebra.hpp"
#include "quadword/construction.hpp"
#include "quadword/error.hpp"
#include "quadword/factor_index.hpp"
#include "quadword/growth.hpp"
#include "quadword/sturmian.hpp"
#include "quadword/word.hpp"

#ifndef QUADWORD_VERSION
#define QUADWORD_VERSION "0.0.0"
#endif

namespace quadword::cli {

  using nlohmann::json;

  namespace {

    struct UsageError : std::runtime_error {
      using std::runtime_error::runtime_error;
    };

    json or_null(std::string const& s) {
      return s.empty() ? json(nullptr) : json(s);
    }

    json or_null(std::uint64_t x) {
      return x == 0 ? json(nullptr) : json(x);
    }

    json number(BigInt const& x) {
      if (x <= std::numeric_limits<std::uint64_t>::max()) {
        return x.convert_to<std::uint64_t>();
      }
      return x.str();
    }

    std::string timestamp() {
      auto const now
          = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
      std::tm tm{};
      gmtime_r(&now, &tm);
      char buf[32];
      std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
      return buf;
    }

    // Only generated_at varies between identical runs.
    json header(RunConfig const& cfg) {
      return {{"tool", "quadword"},
              {"version", QUADWORD_VERSION},
              {"config", to_json(cfg)},
              {"generated_at", timestamp()}};
    }

    void emit(std::string const& path, std::string const& text, std::ostream& out) {
      if (path.empty() || path == "-") {
        out << text;
        return;
      }
      std::ofstream file(path, std::ios::binary);
      file << text;
      if (!file) {
        throw Error("cannot write " + path);
      }
    }

    void emit_json(std::string const& path, json const& j, std::ostream& out) {
      emit(path, j.dump(2) + "\n", out);
    }

    json read_json_file(std::string const& path) {
      std::ifstream in(path);
      if (!in) {
        throw Error("cannot read " + path);
      }
      return json::parse(in);
    }

    ////////////////////////////////////////////////////////////////////////
    // Word sources
    ////////////////////////////////////////////////////////////////////////

    void check_single_source(RunConfig const& cfg, bool allow_file) {
      int const given = !cfg.base.empty() + !cfg.slope.empty() + !cfg.in.empty();
      if (given != 1) {
        throw UsageError(allow_file ? "give exactly one of --base, --slope, --in"
                                    : "give exactly one of --base, --slope");
      }
    }

    StreamPtr make_stream(RunConfig const& cfg, bool allow_u = true) {
      if (!cfg.slope.empty()) {
        return mechanical_stream(SlopeSpec::parse(cfg.slope));
      }
      if (cfg.base == "fibonacci") {
        return fibonacci_stream();
      }
      if (cfg.base == "u" && allow_u) {
        auto params          = fibonacci_params(cfg.depth ? cfg.depth : 1);
        params.growth_factor = cfg.growth;
        params.anchor_rule   = parse_anchor_rule(cfg.rule);
        return u_stream(params);
      }
      throw UsageError("unknown base '" + cfg.base + "' (expected fibonacci"
                       + (allow_u ? " or u)" : ")"));
    }

    struct Source {
      FiniteWord  word;
      std::string descriptor;
    };

    Source load_source(RunConfig const& cfg) {
      check_single_source(cfg, true);
      if (!cfg.in.empty()) {
        auto word = read_word_file(cfg.in);
        if (cfg.length) {
          if (cfg.length > word.length()) {
            throw UsageError("--length exceeds the " + std::to_string(word.length())
                             + " letters of " + cfg.in);
          }
          word = slice(word, 0, cfg.length);
        }
        return {std::move(word), "file:" + cfg.in};
      }
      if (!cfg.length) {
        throw UsageError("--length is required with --base or --slope");
      }
      auto const stream = make_stream(cfg);
      return {stream->prefix(cfg.length), stream->descriptor()};
    }

    void require(bool given, char const* flag) {
      if (!given) {
        throw UsageError(std::string(flag) + " is required");
      }
    }

    ////////////////////////////////////////////////////////////////////////
    // Commands
    ////////////////////////////////////////////////////////////////////////

    int cmd_gen(RunConfig const& cfg, std::ostream& out) {
      auto const src = load_source(cfg);
      std::ostringstream text;
      write_word(text, src.word);
      emit(cfg.out, text.str(), out);
      return 0;
    }

    json stage_checks_json(std::vector<StageBoundCheck> const& checks) {
      json out = json::array();
      for (auto const& c : checks) {
        out.push_back({{"d", c.d},
                       {"stage_length", c.stage_length},
                       {"anchor_length", c.anchor_length},
                       {"bound", c.bound},
                       {"ratio", c.ratio},
                       {"ok", c.ok}});
      }
      return out;
    }

    bool all_ok(std::vector<StageBoundCheck> const& checks) {
      return std::all_of(checks.begin(), checks.end(),
                         [](auto const& c) { return c.ok; });
    }

    int cmd_construct(RunConfig const& cfg, std::ostream& out) {
      check_single_source(cfg, false);
      require(cfg.depth, "--depth");
      require(cfg.length, "--length");

      ConstructionParams params;
      params.base          = make_stream(cfg, false);
      params.depth         = cfg.depth;
      params.growth_factor = cfg.growth;
      params.anchor_rule   = parse_anchor_rule(cfg.rule);
      auto const u         = u_stream(params);
      auto const word      = u->prefix(cfg.length);
      auto const trace     = u->trace(cfg.depth);
      auto const checks    = verify_stage_length_bound(trace);
      bool const ok        = all_ok(checks);

      if (!cfg.out.empty() || cfg.trace.empty()) {
        std::ostringstream text;
        write_word(text, word);
        emit(cfg.out, text.str(), out);
      }
      if (!cfg.trace.empty()) {
        Alphabet const& sigma = params.base->alphabet();
        json anchors = json::array(), exponents = json::array(),
             blocks = json::array();
        for (std::size_t i = 1; i <= trace.depth(); ++i) {
          anchors.push_back(trace.anchor(i).to_string(sigma));
          blocks.push_back(trace.block(i).length());
          json row = json::array();
          for (std::size_t j = 1; j < i; ++j) {
            row.push_back(trace.exponent(i, j));
          }
          exponents.push_back(std::move(row));
        }
        json report{{"header", header(cfg)},
                    {"base", params.base->descriptor()},
                    {"depth", trace.depth()},
                    {"growth_factor", params.growth_factor},
                    {"anchor_rule", to_string(params.anchor_rule)},
                    {"anchors", anchors},
                    {"exponents", exponents},
                    {"block_lengths", blocks},
                    {"stage_lengths", trace.stage_lengths},
                    {"length_bound_ok", ok},
                    {"length_bound_checks", stage_checks_json(checks)}};
        emit_json(cfg.trace, report, out);
      }
      return ok ? 0 : 1;
    }

    json periodicity_json(GapClassification const& g) {
      return {{"kind", to_string(g.kind)},
              {"witness", g.witness ? json(*g.witness) : json(nullptr)},
              {"horizon", g.horizon}};
    }

    int cmd_complexity(RunConfig const& cfg, std::ostream& out) {
      require(cfg.nmax, "--nmax");
      auto const src   = load_source(cfg);
      auto const index = build_trusted_index(src.word);
      auto const prof  = complexity_profile(index, cfg.nmax, src.descriptor);

      if (cfg.format == "csv") {
        std::ostringstream csv;
        csv << "n,p_n,trusted\n";
        for (std::size_t n = 1; n <= prof.n_max(); ++n) {
          csv << n << ',' << prof.p[n] << ',' << (prof.trusted(n) ? 1 : 0) << '\n';
        }
        emit(cfg.out, csv.str(), out);
        return 0;
      }
      json rows = json::array();
      for (std::size_t n = 1; n <= prof.n_max(); ++n) {
        rows.push_back({{"n", n}, {"p_n", prof.p[n]}, {"trusted", prof.trusted(n)}});
      }
      json report{{"header", header(cfg)},
                  {"source", src.descriptor},
                  {"length", src.word.length()},
                  {"n_max", prof.n_max()},
                  {"n_trust", prof.n_trust},
                  {"rows", rows},
                  {"periodicity", periodicity_json(bergman_gap_check(prof))}};
      emit_json(cfg.out, report, out);
      return 0;
    }

    json bound_checks_json(std::vector<BoundCheck> const& checks) {
      json out = json::array();
      for (auto const& c : checks) {
        out.push_back({{"n", c.n},
                       {"bound", c.bound},
                       {"actual", number(c.actual)},
                       {"pass", c.pass}});
      }
      return out;
    }

    int cmd_growth(RunConfig const& cfg, std::ostream& out) {
      require(cfg.nmax, "--nmax");
      auto const src   = load_source(cfg);
      auto const index = build_trusted_index(src.word);
      auto const prof  = complexity_profile(index, cfg.nmax, src.descriptor);
      if (cfg.nmax > prof.n_trust) {
        throw HorizonError("--nmax " + std::to_string(cfg.nmax)
                           + " exceeds the trusted horizon "
                           + std::to_string(prof.n_trust) + " of this prefix");
      }
      auto report         = growth_report(prof, cfg.nmax);
      report.bound_checks = check_growth_sandwich(prof, cfg.nmax);
      bool const pass     = std::all_of(report.bound_checks.begin(),
                                    report.bound_checks.end(),
                                    [](auto const& c) { return c.pass; });
      json dims = json::array();
      for (auto const& d : report.dims) {
        dims.push_back(number(d));
      }
      json j{{"header", header(cfg)},
             {"source", src.descriptor},
             {"n_trust", prof.n_trust},
             {"dims", dims},
             {"n_lo", report.n_lo},
             {"n_hi", report.n_hi},
             {"gk_estimate", report.gk_estimate},
             {"gc_estimate", report.gc_estimate},
             {"c_lower", report.c_lower},
             {"c_upper", report.c_upper},
             {"bound_checks", bound_checks_json(report.bound_checks)},
             {"all_pass", pass}};
      emit_json(cfg.report.empty() ? cfg.out : cfg.report, j, out);
      return pass ? 0 : 1;
    }

    int cmd_hilbert(RunConfig const& cfg, std::ostream& out) {
      require(cfg.nmax, "--nmax");
      auto const pres   = ForbiddenPresentation::parse(cfg.alphabet, cfg.forbidden);
      auto const series = transfer_series(pres, cfg.nmax);

      if (cfg.format == "csv") {
        std::ostringstream csv;
        csv << "n,count\n";
        for (std::size_t n = 1; n <= cfg.nmax; ++n) {
          csv << n << ',' << series[n] << '\n';
        }
        emit(cfg.out, csv.str(), out);
        return 0;
      }
      std::size_t const states = TransferAutomaton(pres).state_count();
      std::size_t const horizon
          = std::max({cfg.nmax, std::size_t{12}, 2 * states});
      auto const cls = classify_growth(pres, horizon);
      json forbidden = json::array(), counts = json::array();
      for (auto const& w : pres.forbidden()) {
        forbidden.push_back(w.to_string(pres.alphabet()));
      }
      for (std::size_t n = 0; n <= cfg.nmax; ++n) {
        counts.push_back({{"n", n}, {"count", number(series[n])}});
      }
      json report{
          {"header", header(cfg)},
          {"alphabet", pres.alphabet().symbols()},
          {"forbidden", forbidden},
          {"counts", counts},
          {"classification",
           {{"class", to_string(cls.cls)},
            {"degree", cls.degree ? json(*cls.degree) : json(nullptr)},
            {"fitted_degree", cls.fitted_degree},
            {"last_ratio", cls.last_ratio},
            {"ratios_stable", cls.ratios_stable},
            {"horizon", cls.horizon}}}};
      emit_json(cfg.out, report, out);
      return 0;
    }

    json candidates_json(std::vector<PrimeCandidate> const& cands) {
      json out = json::array();
      for (auto const& c : cands) {
        out.push_back({{"word", c.canonical_word.to_string()},
                       {"d", c.d},
                       {"pi_degree", c.pi_degree},
                       {"verified_power", c.verified_power},
                       {"status", to_string(c.status)}});
      }
      return out;
    }

    int cmd_primes(RunConfig const& cfg, std::ostream& out) {
      auto const src   = load_source(cfg);
      auto const index = build_trusted_index(src.word);
      auto const cands = enumerate_cogk1_candidates(index, cfg.power, cfg.dmax);
      if (cfg.format == "csv") {
        std::ostringstream csv;
        csv << "word,d,pi_degree,verified_power,status\n";
        for (auto const& c : cands) {
          csv << c.canonical_word << ',' << c.d << ',' << c.pi_degree << ','
              << c.verified_power << ',' << to_string(c.status) << '\n';
        }
        emit(cfg.out, csv.str(), out);
        return 0;
      }
      json report{{"header", header(cfg)},
                  {"source", src.descriptor},
                  {"n_trust", index.n_trust()},
                  {"power", cfg.power},
                  {"dmax", cfg.dmax},
                  {"candidates", candidates_json(cands)}};
      emit_json(cfg.out, report, out);
      return 0;
    }

    int cmd_quotient(RunConfig const& cfg, std::ostream& out) {
      require(!cfg.period.empty(), "--period");
      auto const q   = build_periodic_quotient(FiniteWord::from_string(cfg.period));
      auto const rep = verify_quotient_identities(q, cfg.check_length);
      json rotations = json::array();
      for (auto const& y : q.rotations) {
        rotations.push_back(y.to_string());
      }
      json witnesses{
          {"central", rep.central_witness ? json(rep.central_witness->to_string())
                                          : json(nullptr)},
          {"orthogonal", rep.orthogonal_witness
                             ? json::array({rep.orthogonal_witness->first,
                                            rep.orthogonal_witness->second})
                             : json(nullptr)},
          {"idempotent", rep.idempotent_witness ? json(*rep.idempotent_witness)
                                                : json(nullptr)}};
      json report{{"header", header(cfg)},
                  {"period", q.period.to_string()},
                  {"d", q.d},
                  {"pi_degree", q.pi_degree},
                  {"rotations", rotations},
                  {"check_length", rep.check_length},
                  {"words_checked", rep.words_checked},
                  {"central", rep.central},
                  {"orthogonal", rep.orthogonal},
                  {"idempotent", rep.idempotent},
                  {"witnesses", witnesses},
                  {"ok", rep.ok()}};
      emit_json(cfg.out, report, out);
      return rep.ok() ? 0 : 1;
    }

    json degrees_json(std::vector<MatrixImageDegree> const& degrees) {
      json out = json::array();
      for (auto const& d : degrees) {
        out.push_back({{"j", d.j},
                       {"anchor_length", d.anchor_length},
                       {"d", d.d},
                       {"pi_degree", d.pi_degree},
                       {"envelope", d.envelope}});
      }
      return out;
    }

    int cmd_degrees(RunConfig const& cfg, std::ostream& out) {
      require(!cfg.trace.empty(), "--trace");
      require(!cfg.in.empty(), "--in");
      auto const        trace_json = read_json_file(cfg.trace);
      ConstructionTrace trace;
      for (auto const& a : trace_json.at("anchors")) {
        trace.anchors.push_back(FiniteWord::from_string(a.get<std::string>()));
      }
      auto const index   = build_index(read_word_file(cfg.in));
      auto const degrees = matrix_image_degrees(trace, index, cfg.power);
      json report{{"header", header(cfg)},
                  {"power", cfg.power},
                  {"degrees", degrees_json(degrees)},
                  {"envelope_increases", envelope_increases(degrees)}};
      emit_json(cfg.out, report, out);
      return 0;
    }

    // The whole pipeline: base -> Sturmian check -> U -> complexity ->
    // bounds -> recurrence -> periodicity -> matrix images -> candidates.
    int cmd_verify_all(RunConfig const& cfg, std::ostream& out) {
      check_single_source(cfg, false);
      require(cfg.length, "--length");
      require(cfg.nmax, "--nmax");
      std::size_t const depth = cfg.depth ? cfg.depth : 6;

      json checks    = json::array();
      json estimates = json::object();
      bool all_pass  = true;
      auto record    = [&](std::string const& name, bool pass, json detail) {
        detail["name"] = name;
        detail["pass"] = pass;
        checks.push_back(std::move(detail));
        all_pass = all_pass && pass;
      };
      auto finish = [&](std::string const& u_descriptor) {
        json report{{"header", header(cfg)},
                    {"u", or_null(u_descriptor)},
                    {"checks", checks},
                    {"estimates", estimates},
                    {"all_pass", all_pass}};
        emit_json(cfg.report.empty() ? cfg.out : cfg.report, report, out);
        return all_pass ? 0 : 1;
      };

      auto const     base     = make_stream(cfg, false);
      Position const base_len = std::min<Position>(cfg.length, 100000);
      std::size_t const base_n = std::min<std::size_t>(500, base_len / 3);
      auto const sturm = verify_sturmian(*base, base_len, base_n);
      record("base_sturmian", sturm.ok,
             {{"base", base->descriptor()},
              {"length", base_len},
              {"n_max", base_n},
              {"n_trust", sturm.n_trust},
              {"first_failure", sturm.first_failure ? json(*sturm.first_failure)
                                                    : json(nullptr)}});
      if (!sturm.ok) {
        return finish("");
      }

      ConstructionParams params;
      params.base          = base;
      params.depth         = depth;
      params.growth_factor = cfg.growth;
      params.anchor_rule   = parse_anchor_rule(cfg.rule);
      auto const u         = u_stream(params);
      auto const stages    = verify_stage_length_bound(u->trace(depth));
      record("stage_length_bound", all_ok(stages),
             {{"stages", stage_checks_json(stages)}});

      auto const word    = u->prefix(cfg.length);
      auto const index   = build_trusted_index(word);
      auto const n_check = std::min(cfg.nmax, index.n_trust());
      auto const prof    = complexity_profile(index, n_check, u->descriptor());
      record("trusted_horizon", index.n_trust() >= cfg.nmax,
             {{"length", cfg.length},
              {"n_trust", index.n_trust()},
              {"n_max", cfg.nmax}});

      auto const ub = check_u_bounds(prof, u->trace(), n_check);
      json first_bad = nullptr;
      double worst   = 0;
      for (auto const& e : ub.entries) {
        worst = std::max(worst, static_cast<double>(e.f) / e.bound);
        if (first_bad.is_null() && !(e.pass && e.d_ok)) {
          first_bad = e.n;
        }
      }
      record("complexity_bound", ub.ok,
             {{"n_checked", ub.n_checked},
              {"max_ratio", worst},
              {"first_failure", first_bad}});

      auto const sandwich = check_growth_sandwich(prof, n_check);
      std::size_t failures = 0;
      for (auto const& c : sandwich) {
        failures += !c.pass;
      }
      record("growth_sandwich", failures == 0,
             {{"n_checked", n_check}, {"failures", failures}});

      if (n_check >= 16) {
        auto const gr     = growth_report(prof, n_check);
        estimates["u_gk"] = {{"n_lo", gr.n_lo}, {"n_hi", gr.n_hi},
                             {"gk_estimate", gr.gk_estimate},
                             {"c_lower", gr.c_lower},
                             {"c_upper", gr.c_upper}};
      }

      std::size_t const rec_max = std::min<std::size_t>(30, cfg.length / 4);
      bool              rec_ok  = rec_max > 0;
      json              rec_worst = nullptr;
      for (std::size_t n = 1; n <= rec_max; ++n) {
        auto const r = recurrence_check(index, n, 3);
        if (!r.ok && rec_ok) {
          rec_ok    = false;
          rec_worst = {{"factor", r.worst_factor.to_string()},
                       {"count", r.worst_count}};
        }
      }
      record("recurrence", rec_ok,
             {{"max_length", rec_max},
              {"k_min", 3},
              {"window", cfg.length / 2},
              {"failure", rec_worst}});

      std::size_t const gap_n      = std::min<std::size_t>(200, n_check);
      auto const        base_index = build_trusted_index(base->prefix(base_len));
      auto const base_gap = bergman_gap_check(complexity_profile(base_index, gap_n));
      auto const u_gap    = bergman_gap_check(complexity_profile(index, gap_n));
      record("bergman_gap",
             base_gap.kind == Periodicity::aperiodic_at_horizon
                 && u_gap.kind == Periodicity::aperiodic_at_horizon,
             {{"base", periodicity_json(base_gap)},
              {"u", periodicity_json(u_gap)}});

      try {
        auto const degrees = matrix_image_degrees(u->trace(depth), index, cfg.power);
        record("matrix_images", true,
               {{"power", cfg.power},
                {"degrees", degrees_json(degrees)},
                {"envelope_increases", envelope_increases(degrees)}});
      } catch (HorizonError const& e) {
        record("matrix_images", false, {{"power", cfg.power}, {"error", e.what()}});
      }

      try {
        std::size_t const gc_n = std::min<std::size_t>(500, base_index.n_trust());
        double const      gc   = estimate_growth_constant(
            growth_series(complexity_profile(base_index, gc_n), gc_n), gc_n);
        auto const budget = static_cast<std::size_t>(std::floor(2 * gc));
        auto const base_c = enumerate_cogk1_candidates(base_index, cfg.power, cfg.dmax);
        auto const u_c    = enumerate_cogk1_candidates(index, cfg.power, cfg.dmax);
        estimates["base_gc"] = gc;
        record("candidate_budget", base_c.size() <= budget,
               {{"power", cfg.power},
                {"dmax", cfg.dmax},
                {"budget", budget},
                {"base_candidates", candidates_json(base_c)},
                {"u_candidates", candidates_json(u_c)}});
      } catch (HorizonError const& e) {
        record("candidate_budget", false, {{"error", e.what()}});
      }
      return finish(u->descriptor());
    }

    ////////////////////////////////////////////////////////////////////////
    // Argument plumbing
    ////////////////////////////////////////////////////////////////////////

    void apply_environment() {
      char const* env = std::getenv("QUADWORD_MAX_PREFIX");
      if (env == nullptr || *env == '\0') {
        return;
      }
      std::string_view const text(env);
      std::uint64_t          value = 0;
      auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc() || end != text.data() + text.size() || value == 0) {
        throw UsageError("QUADWORD_MAX_PREFIX must be a positive integer");
      }
      set_max_prefix_length(value);
    }

    bool has_flag(std::vector<std::string> const& args, std::string const& flag) {
      return std::any_of(args.begin(), args.end(), [&](std::string const& a) {
        return a == flag || a.rfind(flag + "=", 0) == 0;
      });
    }

    // Appends "--key value" for every config entry not already given on
    // the command line.
    void expand_config(std::vector<std::string>& args) {
      std::string path;
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
          path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
          path = args[i].substr(9);
        }
      }
      if (path.empty()) {
        return;
      }
      json config;
      try {
        config = read_json_file(path);
      } catch (json::exception const& e) {
        throw UsageError("malformed config " + path + ": " + e.what());
      }
      if (!config.is_object()) {
        throw UsageError("config " + path + " must hold a JSON object");
      }
      for (auto const& [key, value] : config.items()) {
        std::string flag = "--" + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        if (flag == "--config" || has_flag(args, flag)) {
          continue;
        }
        std::string text;
        if (value.is_string()) {
          text = value.get<std::string>();
        } else if (value.is_array()) {
          for (auto const& item : value) {
            text += (text.empty() ? "" : ",")
                    + (item.is_string() ? item.get<std::string>() : item.dump());
          }
        } else {
          text = value.dump();
        }
        args.push_back(flag);
        args.push_back(text);
      }
    }

    void add_base_options(CLI::App* sub, RunConfig& cfg, bool with_file,
                          bool with_u) {
      sub->add_option("--base", cfg.base,
                      with_u ? "Base word: fibonacci or u" : "Base word: fibonacci");
      sub->add_option("--slope", cfg.slope,
                      "Sturmian slope as continued-fraction quotients a1,...,ak");
      if (with_file) {
        sub->add_option("--in", cfg.in, "Word file (one line over a..z)");
      }
      sub->add_option("--length", cfg.length, "Prefix length L")
          ->check(CLI::PositiveNumber);
    }

    void add_construction_options(CLI::App* sub, RunConfig& cfg) {
      sub->add_option("--depth", cfg.depth, "Construction depth")
          ->check(CLI::PositiveNumber);
      sub->add_option("--growth", cfg.growth, "Anchor growth factor (>= 2)")
          ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 20));
      sub->add_option("--rule", cfg.rule, "Anchor rule")
          ->check(CLI::IsMember({"shortest"}));
    }

    void add_format(CLI::App* sub, RunConfig& cfg) {
      sub->add_option("--format", cfg.format, "Output format")
          ->check(CLI::IsMember({"csv", "json"}));
    }

  }  // namespace

  json to_json(RunConfig const& c) {
    return {{"command", c.command},
            {"base", or_null(c.base)},
            {"slope", or_null(c.slope)},
            {"in", or_null(c.in)},
            {"depth", or_null(c.depth)},
            {"length", or_null(c.length)},
            {"nmax", or_null(c.nmax)},
            {"power", c.power},
            {"dmax", c.dmax},
            {"growth", c.growth},
            {"rule", c.rule},
            {"format", c.format},
            {"out", or_null(c.out)},
            {"trace", or_null(c.trace)},
            {"report", or_null(c.report)},
            {"alphabet", c.alphabet},
            {"forbidden", c.forbidden},
            {"period", or_null(c.period)},
            {"check_length", c.check_length},
            {"config", or_null(c.config)},
            {"max_prefix", max_prefix_length()}};
  }

  int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App  app{"Right-infinite words, subword complexity and monomial algebras",
                 "quadword"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", QUADWORD_VERSION);
    app.add_option("--config", cfg.config,
                   "JSON object of option values; command-line flags win");

    auto* gen = app.add_subcommand("gen", "Write a prefix of a Sturmian word");
    add_base_options(gen, cfg, false, true);
    add_construction_options(gen, cfg);
    gen->add_option("--out", cfg.out, "Output word file (default stdout)");

    auto* construct = app.add_subcommand(
        "construct", "Build the word U over a Sturmian base and record its trace");
    add_base_options(construct, cfg, false, false);
    add_construction_options(construct, cfg);
    construct->add_option("--out", cfg.out, "Output word file");
    construct->add_option("--trace", cfg.trace, "Trace JSON file");

    auto* complexity = app.add_subcommand("complexity", "Subword complexity p(n)");
    add_base_options(complexity, cfg, true, true);
    add_construction_options(complexity, cfg);
    complexity->add_option("--nmax", cfg.nmax, "Largest n")->check(CLI::PositiveNumber);
    add_format(complexity, cfg);
    complexity->add_option("--out", cfg.out, "Output file (default stdout)");

    auto* growth = app.add_subcommand("growth", "Growth of the monomial algebra A_W");
    add_base_options(growth, cfg, true, true);
    add_construction_options(growth, cfg);
    growth->add_option("--nmax", cfg.nmax, "Largest n")->check(CLI::PositiveNumber);
    growth->add_option("--report", cfg.report, "Report JSON file (default stdout)");

    auto* hilbert = app.add_subcommand(
        "hilbert", "Word counts of a finitely presented monomial algebra");
    hilbert->add_option("--alphabet", cfg.alphabet, "Generators, e.g. ab");
    hilbert->add_option("--forbidden", cfg.forbidden, "Forbidden words, e.g. aa,bab");
    hilbert->add_option("--nmax", cfg.nmax, "Largest n")->check(CLI::PositiveNumber);
    add_format(hilbert, cfg);
    hilbert->add_option("--out", cfg.out, "Output file (default stdout)");

    auto* primes = app.add_subcommand("primes", "Co-GK-1 prime candidates v^omega");
    add_base_options(primes, cfg, true, true);
    add_construction_options(primes, cfg);
    primes->add_option("--power", cfg.power, "Power threshold K")
        ->check(CLI::PositiveNumber);
    primes->add_option("--dmax", cfg.dmax, "Largest period d")
        ->check(CLI::PositiveNumber);
    add_format(primes, cfg);
    primes->add_option("--out", cfg.out, "Output file (default stdout)");

    auto* quotient = app.add_subcommand(
        "quotient", "Check the identities of a periodic quotient A_{Y^omega}");
    quotient->add_option("--period", cfg.period, "Period word Y");
    quotient->add_option("--check-length", cfg.check_length, "Largest word length checked")
        ->check(CLI::PositiveNumber);
    quotient->add_option("--out", cfg.out, "Output file (default stdout)");

    auto* degrees = app.add_subcommand(
        "degrees", "Periods d_j of the anchors and the PI degrees 2 d_j");
    degrees->add_option("--trace", cfg.trace, "Trace JSON from construct");
    degrees->add_option("--in", cfg.in, "Word file holding a prefix of U");
    degrees->add_option("--power", cfg.power, "Power K that must occur")
        ->check(CLI::PositiveNumber);
    degrees->add_option("--out", cfg.out, "Output file (default stdout)");

    auto* verify = app.add_subcommand("verify-all", "Run the whole pipeline");
    add_base_options(verify, cfg, false, false);
    add_construction_options(verify, cfg);
    verify->add_option("--nmax", cfg.nmax, "Largest n for the bounds")
        ->check(CLI::PositiveNumber);
    verify->add_option("--power", cfg.power, "Power threshold K")
        ->check(CLI::PositiveNumber);
    verify->add_option("--dmax", cfg.dmax, "Largest candidate period")
        ->check(CLI::PositiveNumber);
    verify->add_option("--report", cfg.report, "Report JSON file (default stdout)");

    auto usage_help = [&]() {
      auto const selected = app.get_subcommands();
      return selected.empty() ? app.help() : selected.front()->help();
    };

    try {
      apply_environment();
      expand_config(args);
      std::reverse(args.begin(), args.end());
      app.parse(args);
    } catch (CLI::ParseError const& e) {
      if (e.get_exit_code() == 0) {
        return app.exit(e, out, err);
      }
      err << "error: " << e.what() << "\n\n" << usage_help();
      return 2;
    } catch (UsageError const& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    } catch (std::exception const& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }

    CLI::App* const sub = app.get_subcommands().front();
    cfg.command         = sub->get_name();
    try {
      if (sub == gen) {
        return cmd_gen(cfg, out);
      }
      if (sub == construct) {
        return cmd_construct(cfg, out);
      }
      if (sub == complexity) {
        return cmd_complexity(cfg, out);
      }
      if (sub == growth) {
        return cmd_growth(cfg, out);
      }
      if (sub == hilbert) {
        return cmd_hilbert(cfg, out);
      }
      if (sub == primes) {
        return cmd_primes(cfg, out);
      }
      if (sub == quotient) {
        return cmd_quotient(cfg, out);
      }
      if (sub == degrees) {
        return cmd_degrees(cfg, out);
      }
      return cmd_verify_all(cfg, out);
    } catch (UsageError const& e) {
      err << "error: " << e.what() << "\n\n" << sub->help();
      return 2;
    } catch (InvalidArgument const& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    } catch (ResourceLimitError const& e) {
      err << "resource limit: " << e.what() << "\n";
      return 1;
    } catch (HorizonError const& e) {
      err << "horizon: " << e.what() << "\n";
      return 1;
    } catch (std::exception const& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    }
  }

}  // namespace quadword::cli
