#include "axial/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "axial/automaton.hpp"
#include "axial/counting.hpp"
#include "axial/errors.hpp"
#include "axial/measures.hpp"
#include "axial/models.hpp"
#include "axial/optimize.hpp"

namespace axial {

namespace {

using Json = nlohmann::ordered_json;

struct Common {
  std::string model;
  std::string log_base = "e";
  std::string format = "json";
  std::string caps_text;
  bool verbose = false;
};

double base_divisor(const std::string& base) {
  if (base == "e") return 1.0;
  if (base == "2") return std::log(2.0);
  if (base == "10") return std::log(10.0);
  throw ValidationError("log base must be e, 2 or 10");
}

Caps parse_caps(const std::string& text) {
  Caps caps;
  if (text.empty()) return caps;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("caps entries look like key=value");
    const std::string key = item.substr(0, eq);
    double v = 0;
    try {
      std::size_t used = 0;
      v = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ValidationError("bad cap value in '" + item + "'");
    }
    if (v < 1 || v != std::floor(v) || v > 1.8e19) throw ValidationError("cap '" + key + "' must be a positive integer");
    const auto u = static_cast<std::uint64_t>(v);
    if (key == "sites") caps.max_sites = u;
    else if (key == "nodes") caps.max_nodes = u;
    else if (key == "vertices") caps.max_vertices = u;
    else if (key == "candidates") caps.max_candidates = u;
    else if (key == "forbidden") caps.max_forbidden_length = u;
    else if (key == "width") caps.max_transfer_width = u;
    else throw ValidationError("unknown cap '" + key + "'");
  }
  return caps;
}

std::vector<std::size_t> parse_list(const std::string& text, const char* what) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v < 1) throw std::invalid_argument("range");
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw ValidationError(std::string("bad ") + what + " list '" + text + "'");
    }
  }
  if (out.empty()) throw ValidationError(std::string("empty ") + what + " list");
  return out;
}

BigRational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return BigRational(BigInt(text));
    return BigRational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw ValidationError("bad weight '" + text + "'");
  }
}

std::vector<BigRational> parse_weights(const SubshiftSpec& spec, const std::string& text) {
  std::vector<BigRational> g(spec.alphabet().size(), BigRational(1));
  if (text.empty()) return g;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("weights look like symbol=value");
    const auto a = spec.alphabet().find(item.substr(0, eq));
    if (!a) throw ValidationError("unknown symbol '" + item.substr(0, eq) + "' in weights");
    g[*a] = parse_rational(item.substr(eq + 1));
  }
  return g;
}

Json word_json(const SubshiftSpec& spec, const SetWord& w) {
  Json cells = Json::array();
  for (auto c : w) cells.push_back(spec.symbols_of(c));
  return cells;
}

void put_score(Json& j, const ExactScore& s, const std::string& base) {
  const double v = nats(s);
  j["p"] = to_string(s.p);
  j["n"] = s.n;
  j["nats"] = v;
  j["log_base"] = base;
  j["value"] = v / base_divisor(base);
}

Json cycle_json(const SubshiftSpec& spec, const MaximizingCycle& c) {
  Json j;
  j["word"] = spec.format(c.word);
  j["cells"] = word_json(spec, c.word);
  j["length"] = c.word.size();
  j["p"] = to_string(c.score.p);
  j["n"] = c.score.n;
  j["simple"] = c.simple;
  return j;
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Independence entropy and limiting measures of one-dimensional SFTs", "axial"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    auto* hind = command(app, "hind", "Exact independence entropy and a maximizing cycle");
    std::string dump_path;
    hind->add_option("--dump-graph", dump_path, "Also write the window graph to PATH");

    auto* cycles = command(app, "cycles", "Simple maximizing cycles up to rotation");
    CycleLimits limits;
    cycles->add_option("--max-length", limits.max_length, "Longest cycle (0: vertex count)");
    cycles->add_option("--max-count", limits.max_count, "Stop after this many cycles");

    auto* classify = command(app, "classify", "Uniqueness of the limiting measure of maximal entropy");
    std::size_t bound = 0;
    classify->add_option("--bound", bound, "Phase period bound T (0: twice the cycle length)");
    classify->add_option("--max-length", limits.max_length, "Longest cycle (0: vertex count)");
    classify->add_option("--max-count", limits.max_count, "Stop after this many cycles");

    auto* pressure = command(app, "pressure", "Independence pressure for single-site weights");
    std::string weights;
    pressure->add_option("--weights", weights, "symbol=value,... (value an integer or a/b; default 1)");

    auto* count = command(app, "count", "Exact count of legal n^d boxes");
    std::size_t n = 0, d = 1;
    std::string method = "auto";
    count->add_option("--n", n, "Box side")->required();
    count->add_option("--d", d, "Dimension");
    count->add_option("--method", method, "auto, backtrack or transfer");

    auto* table = command(app, "table", "Box estimates against the independence entropy");
    std::string n_list = "2,3,4", d_list = "1,2,3", csv_path;
    bool skip_capped = false;
    table->add_option("--n", n_list, "Comma-separated sides");
    table->add_option("--d", d_list, "Comma-separated dimensions");
    table->add_option("--csv", csv_path, "Write rows as CSV to PATH");
    table->add_flag("--skip-capped", skip_capped, "List capped entries instead of failing");

    auto* e1d = command(app, "entropy1d", "Topological entropy of the one-dimensional shift");
    double tol = 1e-10;
    e1d->add_option("--tol", tol, "Relative tolerance");

    auto* sample = command(app, "sample", "Sample the limiting measure on a box");
    std::size_t sample_n = 4, sample_d = 2, sample_count = 1000;
    std::uint64_t seed = 1;
    std::string emit_path;
    sample->add_option("--n", sample_n, "Box side");
    sample->add_option("--d", sample_d, "Dimension");
    sample->add_option("--count", sample_count, "Number of samples");
    sample->add_option("--seed", seed, "Generator seed");
    sample->add_option("--emit", emit_path, "Write samples as CSV to PATH");

    auto* dump = command(app, "dump-graph", "Print the trimmed window graph");
    std::string universe = "candidates";
    dump->add_option("--universe", universe, "candidates or exhaustive");
    dump->add_option("-o,--out,--dump-graph", dump_path, "Write to PATH instead of stdout");

    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out_, err_);
      return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
      apply_thread_override();
      caps_ = parse_caps(common_.caps_text);
      base_divisor(common_.log_base);
      if (common_.format != "json" && common_.format != "text") {
        throw ValidationError("format must be json or text");
      }
      const SubshiftSpec spec = load_model(common_.model, caps_);
      if (hind->parsed()) return run_hind(spec, dump_path);
      if (cycles->parsed()) return run_cycles(spec, limits);
      if (classify->parsed()) return run_classify(spec, limits, bound);
      if (pressure->parsed()) return run_pressure(spec, weights);
      if (count->parsed()) return run_count(spec, n, d, method);
      if (table->parsed()) return run_table(spec, n_list, d_list, csv_path, skip_capped);
      if (e1d->parsed()) return run_entropy1d(spec, tol);
      if (sample->parsed()) return run_sample(spec, sample_n, sample_d, sample_count, seed, emit_path);
      if (dump->parsed()) return run_dump(spec, universe, dump_path);
      return kExitInvalid;
    } catch (const CapExceeded& e) {
      err_ << "axial: work cap exceeded: " << e.what() << "\n";
      return kExitCapExceeded;
    } catch (const ValidationError& e) {
      err_ << "axial: invalid input: " << e.what() << "\n";
      return kExitInvalid;
    } catch (const std::exception& e) {
      err_ << "axial: " << e.what() << "\n";
      return kExitFailure;
    }
  }

 private:
  CLI::App* command(CLI::App& app, const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("model", common_.model,
                    "hard_square, plastic, full:S, coloring:N, beach:M, rll:D,K, rll:D,inf, file:PATH")
        ->required();
    sub->add_option("--log-base", common_.log_base, "e, 2 or 10");
    sub->add_option("--format", common_.format, "json or text");
    sub->add_option("--caps", common_.caps_text,
                    "sites=24,nodes=1e9,vertices=1e6,candidates=1048576,forbidden=8,width=12");
    sub->add_flag("--verbose", common_.verbose, "Progress notes on stderr");
    return sub;
  }

  void apply_thread_override() {
    if (const char* env = std::getenv("AXIAL_THREADS")) {
      const int t = std::atoi(env);
      if (t < 1) throw ValidationError("AXIAL_THREADS must be a positive integer");
      omp_set_num_threads(t);
    }
  }

  Json header(const char* command) const {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["model"] = common_.model;
    return j;
  }

  void emit(const Json& j) { out_ << j.dump(2) << "\n"; }

  double in_base(double nats_value) const { return nats_value / base_divisor(common_.log_base); }

  void note(const std::string& msg) {
    if (common_.verbose) err_ << "axial: " << msg << "\n";
  }

  int run_hind(const SubshiftSpec& spec, const std::string& dump_path) {
    const auto analysis = analyze_independence(spec, caps_);
    note("window graph: " + std::to_string(analysis.graph.vertex_count()) + " vertices, " +
         std::to_string(analysis.graph.edges.size()) + " edges");
    if (!dump_path.empty()) write_graph(analysis.graph, spec, dump_path);
    if (common_.format == "text") {
      out_ << "h_ind = (1/" << analysis.score.n << ") ln " << to_string(analysis.score.p) << " = "
           << in_base(nats(analysis.score)) << " (base " << common_.log_base << ")\n"
           << "witness " << spec.format(analysis.witness.word) << "\n";
      return kExitOk;
    }
    Json j = header("hind");
    put_score(j, analysis.score, common_.log_base);
    j["witness"] = spec.format(analysis.witness.word);
    j["witness_cells"] = word_json(spec, analysis.witness.word);
    j["vertices"] = analysis.graph.vertex_count();
    j["edges"] = analysis.graph.edges.size();
    emit(j);
    return kExitOk;
  }

  int run_cycles(const SubshiftSpec& spec, const CycleLimits& limits) {
    const auto e = enumerate_simple_maximizing_cycles(spec, limits, caps_);
    if (common_.format == "text") {
      out_ << "h_ind = (1/" << e.score.n << ") ln " << to_string(e.score.p) << "\n";
      for (const auto& c : e.cycles) out_ << spec.format(c.word) << "\n";
      out_ << e.cycles.size() << " cycles" << (e.complete ? "" : " (incomplete)") << "\n";
    } else {
      Json j = header("cycles");
      put_score(j, e.score, common_.log_base);
      j["complete"] = e.complete;
      j["count"] = e.cycles.size();
      Json list = Json::array();
      for (const auto& c : e.cycles) list.push_back(cycle_json(spec, c));
      j["cycles"] = list;
      emit(j);
    }
    return e.complete ? kExitOk : kExitUnknown;
  }

  int run_classify(const SubshiftSpec& spec, const CycleLimits& limits, std::size_t bound) {
    ClassifyBounds b;
    b.cycles = limits;
    b.phase_bound = bound;
    const auto c = classify_mme(spec, b, caps_);
    const bool unknown = c.verdict == Verdict::unknown_within_bounds;
    if (common_.format == "text") {
      out_ << "verdict " << to_string(c.verdict);
      if (c.verdict == Verdict::exactly_k) out_ << " " << c.k;
      out_ << "\n" << c.reason << "\n";
      for (const auto& cyc : c.cycles) out_ << spec.format(cyc.word) << "\n";
      return unknown ? kExitUnknown : kExitOk;
    }
    Json j = header("classify");
    j["verdict"] = to_string(c.verdict);
    if (c.verdict == Verdict::exactly_k) j["k"] = c.k;
    put_score(j, c.score, common_.log_base);
    j["reason"] = c.reason;
    j["cycles_complete"] = c.cycles_complete;
    Json list = Json::array();
    for (const auto& cyc : c.cycles) list.push_back(cycle_json(spec, cyc));
    j["cycles"] = list;
    if (c.counterexample) {
      Json ce;
      ce["cycle"] = c.counterexample_cycle;
      ce["period"] = c.counterexample->period;
      ce["t"] = c.counterexample->t;
      ce["drift"] = c.counterexample->drift;
      ce["phases"] = c.counterexample->phases;
      j["counterexample"] = ce;
    }
    Json bounds;
    bounds["phase_bound"] = c.bounds.phase_bound;
    bounds["max_length"] = c.bounds.cycles.max_length;
    bounds["max_count"] = c.bounds.cycles.max_count;
    j["bounds"] = bounds;
    emit(j);
    return unknown ? kExitUnknown : kExitOk;
  }

  int run_pressure(const SubshiftSpec& spec, const std::string& weights) {
    const auto g = parse_weights(spec, weights);
    const auto r = independence_pressure(spec, g, caps_);
    const double v = nats(r.score);
    if (common_.format == "text") {
      out_ << "P_ind = (1/" << r.score.n << ") ln " << to_string(r.score.p) << " = " << in_base(v)
           << " (base " << common_.log_base << ")\nwitness " << spec.format(r.witness) << "\n";
      return kExitOk;
    }
    Json j = header("pressure");
    j["p"] = to_string(r.score.p);
    j["n"] = r.score.n;
    j["nats"] = v;
    j["log_base"] = common_.log_base;
    j["value"] = in_base(v);
    j["witness"] = spec.format(r.witness);
    j["witness_cells"] = word_json(spec, r.witness);
    emit(j);
    return kExitOk;
  }

  int run_count(const SubshiftSpec& spec, std::size_t n, std::size_t d, const std::string& method) {
    CountMethod m = CountMethod::automatic;
    if (method == "backtrack") m = CountMethod::backtrack;
    else if (method == "transfer") m = CountMethod::transfer;
    else if (method != "auto") throw ValidationError("method must be auto, backtrack or transfer");
    const auto c = count_box(spec, n, d, caps_, m);
    if (common_.format == "text") {
      out_ << "count(" << n << "," << d << ") = " << to_string(c.count) << "\nestimate "
           << in_base(c.estimate) << "\n";
      return kExitOk;
    }
    Json j = header("count");
    j["n"] = n;
    j["d"] = d;
    j["count"] = to_string(c.count);
    j["estimate_nats"] = c.estimate;
    j["log_base"] = common_.log_base;
    j["estimate"] = in_base(c.estimate);
    emit(j);
    return kExitOk;
  }

  int run_table(const SubshiftSpec& spec, const std::string& n_list, const std::string& d_list,
                const std::string& csv_path, bool skip_capped) {
    const auto t = entropy_estimate_table(spec, parse_list(n_list, "n"), parse_list(d_list, "d"),
                                          caps_, skip_capped);
    const double h = nats(t.h_ind);
    if (!csv_path.empty()) {
      std::ofstream csv(csv_path);
      if (!csv) throw ValidationError("cannot write '" + csv_path + "'");
      csv.precision(17);
      csv << "n,d,count,estimate_nats,h_ind_nats\n";
      for (const auto& r : t.rows) {
        csv << r.n << "," << r.d << "," << to_string(r.count) << "," << r.estimate << "," << h << "\n";
      }
    }
    if (common_.format == "text") {
      for (const auto& r : t.rows) {
        out_ << "n=" << r.n << " d=" << r.d << " count=" << to_string(r.count)
             << " estimate=" << in_base(r.estimate) << "\n";
      }
      out_ << "h_ind=" << in_base(h) << "\n";
      for (const auto& s : t.skipped) out_ << "skipped " << s << "\n";
      return kExitOk;
    }
    Json j = header("table");
    put_score(j, t.h_ind, common_.log_base);
    Json rows = Json::array();
    for (const auto& r : t.rows) {
      Json row;
      row["n"] = r.n;
      row["d"] = r.d;
      row["count"] = to_string(r.count);
      row["estimate_nats"] = r.estimate;
      row["estimate"] = in_base(r.estimate);
      rows.push_back(row);
    }
    j["rows"] = rows;
    j["sandwich"] = t.sandwich;
    j["slice_monotone"] = t.slice_monotone;
    j["doubling_monotone"] = t.doubling_monotone;
    j["thin_box"] = t.thin_box;
    j["skipped"] = t.skipped;
    emit(j);
    return kExitOk;
  }

  int run_entropy1d(const SubshiftSpec& spec, double tol) {
    if (!(tol > 0)) throw ValidationError("tolerance must be positive");
    const double h = entropy_1d(spec, tol, caps_);
    if (common_.format == "text") {
      out_ << "h = " << in_base(h) << " (base " << common_.log_base << ")\n";
      return kExitOk;
    }
    Json j = header("entropy1d");
    j["nats"] = h;
    j["log_base"] = common_.log_base;
    j["value"] = in_base(h);
    j["tol"] = tol;
    emit(j);
    return kExitOk;
  }

  int run_sample(const SubshiftSpec& spec, std::size_t n, std::size_t d, std::size_t count,
                 std::uint64_t seed, const std::string& emit_path) {
    const auto [score, cycle] = independence_entropy(spec, caps_);
    const auto batch = sample_box(spec, cycle.word, n, d, seed, count, caps_);
    const auto st = empirical_stats(spec, batch);
    if (!emit_path.empty()) {
      std::ofstream csv(emit_path);
      if (!csv) throw ValidationError("cannot write '" + emit_path + "'");
      const std::size_t sites = batch.samples.front().sites.size();
      csv << "sample,phase";
      for (std::size_t s = 0; s < sites; ++s) csv << ",s" << s;
      csv << "\n";
      for (std::size_t i = 0; i < batch.samples.size(); ++i) {
        csv << i << "," << batch.samples[i].phase;
        for (auto a : batch.samples[i].sites) csv << "," << spec.alphabet().symbol(a);
        csv << "\n";
      }
    }
    if (common_.format == "text") {
      out_ << count << " samples of " << n << "^" << d << " from " << spec.format(cycle.word)
           << "\nviolations " << st.violations << "\nsite entropy " << in_base(st.site_entropy)
           << "\nparity rate " << st.parity_rate << "\n";
      return kExitOk;
    }
    Json j = header("sample");
    j["algorithm"] = batch.algorithm;
    j["seed"] = seed;
    j["n"] = n;
    j["d"] = d;
    j["count"] = count;
    j["word"] = spec.format(cycle.word);
    j["violations"] = st.violations;
    j["site_entropy_nats"] = st.site_entropy;
    Json mean;
    put_score(mean, st.mean_log_cell, common_.log_base);
    j["mean_log_cell"] = mean;
    j["parity_rate"] = st.parity_rate;
    j["both_parity_rate"] = st.both_parity_rate;
    Json freq;
    for (std::size_t a = 0; a < st.free_site_frequency.size(); ++a) {
      freq[spec.alphabet().symbol(static_cast<Letter>(a))] = st.free_site_frequency[a];
    }
    j["free_site_frequency"] = freq;
    emit(j);
    return kExitOk;
  }

  int run_dump(const SubshiftSpec& spec, const std::string& universe, const std::string& path) {
    GraphUniverse u;
    if (universe == "candidates") u = GraphUniverse::candidates;
    else if (universe == "exhaustive") u = GraphUniverse::exhaustive;
    else throw ValidationError("universe must be candidates or exhaustive");
    const auto g = build_window_graph(spec, u, caps_);
    if (path.empty()) {
      dump_graph(out_, g, spec);
    } else {
      write_graph(g, spec, path);
    }
    return kExitOk;
  }

  void write_graph(const WindowGraph& g, const SubshiftSpec& spec, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot write '" + path + "'");
    dump_graph(f, g, spec);
  }

  std::ostream& out_;
  std::ostream& err_;
  Common common_;
  Caps caps_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner runner(out, err);
  return runner.run(args);
}

}  // namespace axial
