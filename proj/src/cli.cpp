#include "twoperiodic/cli.hpp"

#include <array>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "twoperiodic/analysis.hpp"
#include "twoperiodic/batch.hpp"
#include "twoperiodic/core.hpp"

namespace twoperiodic::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Table, Csv, Json };

struct RawOptions {
  std::array<std::string, 8> coefs;
  bool all_ones = false;
  std::string config_path;
  std::string x0;
  std::string y0;
  std::size_t n_max = 20;
  std::string mode = "float";
  double eps_rank = kDefaultRankEps;
  double tol_class = kDefaultClassTol;
  double tol_cycle = kDefaultCycleTol;
  std::string format = "table";
  std::string output;
  std::string axis1;
  std::string axis2;
  bool serial = false;
};

// Values from the structured config file, as text so exact mode can read "p/q".
struct FileValues {
  std::map<std::string, std::string> values;

  std::optional<std::string> get(const std::string& key) const {
    if (auto it = values.find(key); it != values.end()) return it->second;
    return std::nullopt;
  }
};

FileValues load_config(const std::string& path) {
  FileValues fv;
  if (path.empty()) return fv;
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("--config: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw UsageError("--config: top level must be an object");
  for (const auto& [key, val] : doc.items()) {
    if (val.is_string()) {
      fv.values[key] = val.get<std::string>();
    } else if (val.is_number()) {
      fv.values[key] = val.is_number_float() ? format_scalar(val.get<double>()) : val.dump();
    } else {
      throw UsageError("--config: value of '" + key + "' must be a number or a string");
    }
  }
  return fv;
}

// Flag > config file > --all-ones default.
std::string resolve_coef(const RawOptions& raw, const FileValues& fv, std::size_t i) {
  const std::string name(kCoefNames[i]);
  if (!raw.coefs[i].empty()) return raw.coefs[i];
  if (auto v = fv.get(name)) return *v;
  if (raw.all_ones) return "1";
  throw UsageError("missing required coefficient --" + name);
}

std::string resolve_init(const std::string& flag_value, const FileValues& fv, const char* name) {
  if (!flag_value.empty()) return flag_value;
  if (auto v = fv.get(name)) return *v;
  return "1";
}

template <class Real>
Real parse_value(const std::string& text, const std::string& flag) {
  try {
    if constexpr (is_exact_v<Real>) {
      return parse_rational(text);
    } else {
      return parse_double(text);
    }
  } catch (const std::invalid_argument&) {
    throw UsageError("malformed number for --" + flag + ": '" + text + "'");
  }
}

template <class Real>
struct Problem {
  BasicCoefficients<Real> params;
  State<Real> init;
};

template <class Real>
Problem<Real> build_problem(const RawOptions& raw) {
  const FileValues fv = load_config(raw.config_path);
  std::array<Real, 8> v;
  for (std::size_t i = 0; i < 8; ++i) {
    v[i] = parse_value<Real>(resolve_coef(raw, fv, i), std::string(kCoefNames[i]));
  }
  BasicCoefficients<Real> params(v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]);
  State<Real> init{parse_value<Real>(resolve_init(raw.x0, fv, "x0"), "x0"),
                   parse_value<Real>(resolve_init(raw.y0, fv, "y0"), "y0")};
  return {std::move(params), std::move(init)};
}

ClassifyOptions classify_options(const RawOptions& raw) {
  ClassifyOptions o;
  o.eps_rank = raw.eps_rank;
  o.tol_class = raw.tol_class;
  o.tol_cycle = raw.tol_cycle;
  return o;
}

// --- output helpers --------------------------------------------------------

struct Sink {
  std::ostream& os;
  Format format;
  bool color;
};

std::string bold(const std::string& s, bool color) {
  return color ? "\033[1m" + s + "\033[0m" : s;
}

void write_table(const Sink& sink, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  const auto line = [&](const std::vector<std::string>& cells, bool is_header) {
    std::string s;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      std::string cell = cells[c];
      if (c + 1 < cells.size()) cell.resize(width[c] + 2, ' ');
      s += cell;
    }
    sink.os << (is_header ? bold(s, sink.color) : s) << '\n';
  };
  line(header, true);
  for (const auto& r : rows) line(r, false);
}

void write_csv(const Sink& sink, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) sink.os << ',';
      sink.os << cells[c];
    }
    sink.os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

using KeyValues = std::vector<std::pair<std::string, std::string>>;

void write_kv(const Sink& sink, const KeyValues& kv) {
  std::size_t w = 0;
  for (const auto& [k, v] : kv) w = std::max(w, k.size());
  for (const auto& [k, v] : kv) {
    std::string key = k;
    key.resize(w + 2, ' ');
    sink.os << bold(key, sink.color) << v << '\n';
  }
}

json scalar_json(double v) { return v; }
json scalar_json(const Rational& v) { return format_scalar(v); }

const char* mode_name(ArithmeticMode m) {
  return m == ArithmeticMode::Float64 ? "float" : "exact";
}

// --- subcommands -----------------------------------------------------------

template <class Real>
void emit_orbit(const Sink& sink, const char* command, const BasicOrbit<Real>& orbit,
                std::optional<Rank> rank) {
  if (sink.format == Format::Json) {
    json doc;
    doc["command"] = command;
    doc["mode"] = mode_name(orbit.mode());
    if (rank) doc["rank"] = static_cast<int>(*rank);
    json pts = json::array();
    for (const auto& p : orbit) pts.push_back({{"n", p.n}, {"x", scalar_json(p.x)}, {"y", scalar_json(p.y)}});
    doc["orbit"] = std::move(pts);
    sink.os << doc.dump(2) << '\n';
    return;
  }
  std::vector<std::vector<std::string>> rows;
  rows.reserve(orbit.size());
  for (const auto& p : orbit) {
    rows.push_back({std::to_string(p.n), format_scalar(p.x), format_scalar(p.y)});
  }
  if (sink.format == Format::Csv) {
    write_csv(sink, {"n", "x", "y"}, rows);
  } else {
    write_table(sink, {"n", "x", "y"}, rows);
  }
}

template <class Real>
int cmd_simulate(const RawOptions& raw, const Sink& sink, std::ostream& err) {
  const auto pr = build_problem<Real>(raw);
  try {
    emit_orbit(sink, "simulate", simulate(pr.params, pr.init, raw.n_max), std::nullopt);
  } catch (const TruncationError& e) {
    emit_orbit(sink, "simulate", e.partial(), std::nullopt);
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

template <class Real>
int cmd_closed(const RawOptions& raw, const Sink& sink, std::ostream& err) {
  const auto pr = build_problem<Real>(raw);
  const Rank rank = rank_of(pr.params, raw.eps_rank);
  try {
    if constexpr (is_exact_v<Real>) {
      emit_orbit(sink, "closed", closed_orbit(pr.params, pr.init, raw.n_max), rank);
    } else {
      emit_orbit(sink, "closed", closed_orbit(pr.params, pr.init, raw.n_max, raw.eps_rank), rank);
    }
  } catch (const TruncationError& e) {
    emit_orbit(sink, "closed", e.partial(), rank);
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

KeyValues witness_kv(const Classification& c) {
  KeyValues kv;
  if (c.exact_rank1) {
    kv.emplace_back("K", format_scalar(c.exact_rank1->K));
    kv.emplace_back("mu", format_scalar(c.exact_rank1->mu));
    kv.emplace_back("rho", format_scalar(c.exact_rank1->rho));
  } else if (const auto* r1 = std::get_if<Rank1Data<double>>(&c.witness)) {
    kv.emplace_back("K", format_scalar(r1->K));
    kv.emplace_back("mu", format_scalar(r1->mu));
    kv.emplace_back("rho", format_scalar(r1->rho));
  } else {
    const auto& w = std::get<Rank2Witness>(c.witness);
    kv.emplace_back("lambda1", format_scalar(w.lambda1));
    kv.emplace_back("lambda2", format_scalar(w.lambda2));
    kv.emplace_back("Q", format_scalar(w.Q));
    kv.emplace_back("delta", format_scalar(w.delta));
    kv.emplace_back("scale", format_scalar(w.scale));
  }
  return kv;
}

json witness_json(const Classification& c) {
  json w;
  if (c.exact_rank1) {
    w = {{"K", format_scalar(c.exact_rank1->K)},
         {"mu", format_scalar(c.exact_rank1->mu)},
         {"rho", format_scalar(c.exact_rank1->rho)}};
  } else if (const auto* r1 = std::get_if<Rank1Data<double>>(&c.witness)) {
    w = {{"K", r1->K}, {"mu", r1->mu}, {"rho", r1->rho}};
  } else {
    const auto& r2 = std::get<Rank2Witness>(c.witness);
    w = {{"lambda1", r2.lambda1}, {"lambda2", r2.lambda2}, {"Q", r2.Q},
         {"delta", r2.delta},     {"scale", r2.scale}};
  }
  return w;
}

json cycle_json(const Classification& c) {
  if (!c.cycle) return nullptr;
  const auto& cy = *c.cycle;
  return {{"x_even", cy.x_even}, {"x_odd", cy.x_odd},       {"y_even", cy.y_even},
          {"y_odd", cy.y_odd},   {"residual", cy.residual}, {"terms", cy.terms}};
}

std::string k_or_q_text(const Classification& c) {
  return c.exact_rank1 ? format_scalar(c.exact_rank1->K) : format_scalar(c.k_or_q());
}

std::string rho_or_delta_text(const Classification& c) {
  return c.exact_rank1 ? format_scalar(c.exact_rank1->rho) : format_scalar(c.rho_or_delta());
}

template <class Real>
int cmd_classify(const RawOptions& raw, const Sink& sink, std::ostream&) {
  const auto pr = build_problem<Real>(raw);
  const Classification c = classify(pr.params, classify_options(raw));
  const bool strict = pr.params.strict_paper_regime();
  switch (sink.format) {
    case Format::Json: {
      json doc{{"command", "classify"},
               {"mode", mode_name(mode_of_v<Real>)},
               {"rank", static_cast<int>(c.rank)},
               {"kind", std::string(kind_name(c.kind))},
               {"strict_paper_regime", strict},
               {"witness", witness_json(c)},
               {"cycle", cycle_json(c)}};
      sink.os << doc.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      write_csv(sink, {"rank", "K_or_Q", "rho_or_delta", "kind"},
                {{std::to_string(static_cast<int>(c.rank)), k_or_q_text(c), rho_or_delta_text(c),
                  std::string(kind_name(c.kind))}});
      break;
    case Format::Table: {
      KeyValues kv{{"rank", std::to_string(static_cast<int>(c.rank))},
                   {"kind", std::string(kind_name(c.kind))}};
      for (auto& e : witness_kv(c)) kv.push_back(std::move(e));
      if (c.cycle) {
        kv.emplace_back("x_even", format_scalar(c.cycle->x_even));
        kv.emplace_back("x_odd", format_scalar(c.cycle->x_odd));
        kv.emplace_back("y_even", format_scalar(c.cycle->y_even));
        kv.emplace_back("y_odd", format_scalar(c.cycle->y_odd));
        kv.emplace_back("cycle_residual", format_scalar(c.cycle->residual));
      }
      kv.emplace_back("strict_paper_regime", strict ? "true" : "false");
      write_kv(sink, kv);
      break;
    }
  }
  return kExitOk;
}

template <class Real>
int cmd_compare(const RawOptions& raw, const Sink& sink, std::ostream&) {
  const auto pr = build_problem<Real>(raw);
  ComparisonReport rep;
  if constexpr (is_exact_v<Real>) {
    rep = compare(pr.params, pr.init, raw.n_max);
  } else {
    rep = compare(pr.params, pr.init, raw.n_max, raw.eps_rank);
  }
  const std::string div = rep.first_divergence_index ? std::to_string(*rep.first_divergence_index) : "none";
  const std::string rank = std::to_string(static_cast<int>(rep.rank));
  switch (sink.format) {
    case Format::Json: {
      json doc{{"command", "compare"},
               {"mode", mode_name(mode_of_v<Real>)},
               {"rank", static_cast<int>(rep.rank)},
               {"n_max", rep.n_max},
               {"max_rel_error_x", rep.max_rel_error_x},
               {"max_rel_error_y", rep.max_rel_error_y},
               {"first_divergence_index", rep.first_divergence_index
                                              ? json(*rep.first_divergence_index)
                                              : json(nullptr)}};
      if constexpr (is_exact_v<Real>) doc["exact_closed_form"] = rep.exact_closed_form;
      sink.os << doc.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      write_csv(sink, {"rank", "n_max", "max_rel_error_x", "max_rel_error_y", "first_divergence_index"},
                {{rank, std::to_string(rep.n_max), format_scalar(rep.max_rel_error_x),
                  format_scalar(rep.max_rel_error_y), div}});
      break;
    case Format::Table: {
      KeyValues kv{{"rank", rank},
                   {"n_max", std::to_string(rep.n_max)},
                   {"max_rel_error_x", format_scalar(rep.max_rel_error_x)},
                   {"max_rel_error_y", format_scalar(rep.max_rel_error_y)},
                   {"first_divergence_index", div}};
      if constexpr (is_exact_v<Real>) {
        kv.emplace_back("exact_closed_form", rep.exact_closed_form ? "true" : "false");
      }
      write_kv(sink, kv);
      break;
    }
  }
  return kExitOk;
}

SweepAxis parse_axis(const std::string& spec, const char* flag) {
  // name:lo:hi:steps
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4) {
    throw UsageError(std::string("--") + flag + " expects name:lo:hi:steps, got '" + spec + "'");
  }
  const auto coef = coef_from_name(parts[0]);
  if (!coef) throw UsageError(std::string("--") + flag + ": unknown coefficient '" + parts[0] + "'");
  SweepAxis axis{*coef, parse_value<double>(parts[1], flag), parse_value<double>(parts[2], flag), 0};
  try {
    std::size_t used = 0;
    const long steps = std::stol(parts[3], &used);
    if (used != parts[3].size() || steps < 0) throw std::invalid_argument("steps");
    axis.steps = static_cast<std::size_t>(steps);
  } catch (const std::exception&) {
    throw UsageError(std::string("--") + flag + ": malformed step count '" + parts[3] + "'");
  }
  return axis;
}

int cmd_sweep(const RawOptions& raw, const Sink& sink, std::ostream&) {
  if (raw.mode != "float") throw UsageError("sweep supports --mode float only");
  if (raw.axis1.empty()) throw UsageError("missing required option --axis1");
  const SweepAxis axis1 = parse_axis(raw.axis1, "axis1");
  std::optional<SweepAxis> axis2;
  if (!raw.axis2.empty()) axis2 = parse_axis(raw.axis2, "axis2");
  // swept coefficients need no fixed value; the base takes the axis start
  RawOptions filled = raw;
  for (const auto& ax : {std::optional<SweepAxis>(axis1), axis2}) {
    if (!ax) continue;
    auto& slot = filled.coefs[static_cast<std::size_t>(ax->coef)];
    if (slot.empty() && ax->lo > 0.0) slot = format_scalar(ax->lo);
  }
  const auto pr = build_problem<double>(filled);
  SweepConfig cfg{pr.params, axis1, axis2, classify_options(raw)};
  try {
    validate(cfg);
  } catch (const InputError& e) {
    throw UsageError(e.what());
  }
  const auto rows = sweep(cfg, raw.serial ? Execution::Serial : Execution::Parallel);

  std::vector<std::string> header{std::string(coef_name(cfg.axis1.coef))};
  if (cfg.axis2) header.emplace_back(coef_name(cfg.axis2->coef));
  if (sink.format == Format::Json) {
    json out_rows = json::array();
    for (const auto& r : rows) {
      json row;
      for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = r.axis_values[i];
      row["rank"] = static_cast<int>(r.cls.rank);
      row["K_or_Q"] = r.cls.k_or_q();
      row["rho_or_delta"] = r.cls.rho_or_delta();
      row["kind"] = std::string(kind_name(r.cls.kind));
      row["witness"] = witness_json(r.cls);
      row["cycle"] = cycle_json(r.cls);
      out_rows.push_back(std::move(row));
    }
    json doc{{"command", "sweep"}, {"axes", header}, {"rows", std::move(out_rows)}};
    sink.os << doc.dump(2) << '\n';
    return kExitOk;
  }
  for (const char* col : {"rank", "K_or_Q", "rho_or_delta", "kind"}) header.emplace_back(col);
  std::vector<std::vector<std::string>> table;
  table.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<std::string> cells;
    for (double v : r.axis_values) cells.push_back(format_scalar(v));
    cells.push_back(std::to_string(static_cast<int>(r.cls.rank)));
    cells.push_back(format_scalar(r.cls.k_or_q()));
    cells.push_back(format_scalar(r.cls.rho_or_delta()));
    cells.emplace_back(kind_name(r.cls.kind));
    table.push_back(std::move(cells));
  }
  if (sink.format == Format::Csv) {
    write_csv(sink, header, table);
  } else {
    write_table(sink, header, table);
  }
  return kExitOk;
}

void add_common(CLI::App* sub, RawOptions& raw, bool with_n) {
  for (std::size_t i = 0; i < 8; ++i) {
    const std::string name(kCoefNames[i]);
    sub->add_option("--" + name, raw.coefs[i], "coefficient " + name + " (> 0; p/q accepted)");
  }
  sub->add_flag("--all-ones", raw.all_ones, "default every unset coefficient to 1");
  sub->add_option("--config", raw.config_path,
                  "JSON object with a0..d1, x0, y0 (numbers or \"p/q\" strings); flags win");
  sub->add_option("--x0", raw.x0, "initial x (default 1)");
  sub->add_option("--y0", raw.y0, "initial y (default 1)");
  if (with_n) sub->add_option("-n,--n-max", raw.n_max, "last index n_max (default 20)");
  sub->add_option("--mode", raw.mode, "float | exact")
      ->check(CLI::IsMember({"float", "exact"}));
  sub->add_option("--eps-rank", raw.eps_rank, "relative determinant tolerance for rank 1")
      ->check(CLI::PositiveNumber);
  sub->add_option("--tol-class", raw.tol_class, "trichotomy tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--tol-cycle", raw.tol_cycle, "limit-cycle stopping tolerance")
      ->check(CLI::PositiveNumber);
  sub->add_option("--format", raw.format, "table | csv | json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  sub->add_option("-o,--output", raw.output, "write results to this file");
}

Format parse_format(const std::string& f) {
  if (f == "csv") return Format::Csv;
  if (f == "json") return Format::Json;
  return Format::Table;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form solver and classifier for the two-periodic rational system\n"
               "  x' = a_n/x + b_n/y,  y' = c_n/x + d_n/y",
               "twoperiodic"};
  app.require_subcommand(1);
  RawOptions raw;

  auto* sim = app.add_subcommand("simulate", "iterate the system directly");
  auto* closed = app.add_subcommand("closed", "evaluate the closed-form solution");
  auto* cls = app.add_subcommand("classify", "rank and long-run behaviour of the parameters");
  auto* cmp = app.add_subcommand("compare", "closed form against direct iteration");
  auto* swp = app.add_subcommand("sweep", "classify a 1- or 2-axis parameter grid");
  add_common(sim, raw, true);
  add_common(closed, raw, true);
  add_common(cls, raw, false);
  add_common(cmp, raw, true);
  add_common(swp, raw, false);
  swp->add_option("--axis1", raw.axis1, "name:lo:hi:steps, e.g. d1:0.1:4:40");
  swp->add_option("--axis2", raw.axis2, "optional second axis, same shape");
  swp->add_flag("--serial", raw.serial, "use the serial reference kernel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::ofstream file;
  if (!raw.output.empty()) {
    file.open(raw.output, std::ios::binary);
    if (!file) {
      err << "error: cannot open output file '" << raw.output << "'\n";
      return kExitUsage;
    }
  }
  std::ostream& os = raw.output.empty() ? out : file;
  const bool color = raw.output.empty() && &out == &std::cout && ::isatty(STDOUT_FILENO) != 0 &&
                     std::getenv("NO_COLOR") == nullptr;
  const Sink sink{os, parse_format(raw.format), color};
  const bool exact = raw.mode == "exact";

  try {
    if (sim->parsed()) {
      return exact ? cmd_simulate<Rational>(raw, sink, err) : cmd_simulate<double>(raw, sink, err);
    }
    if (closed->parsed()) {
      return exact ? cmd_closed<Rational>(raw, sink, err) : cmd_closed<double>(raw, sink, err);
    }
    if (cls->parsed()) {
      return exact ? cmd_classify<Rational>(raw, sink, err) : cmd_classify<double>(raw, sink, err);
    }
    if (cmp->parsed()) {
      return exact ? cmd_compare<Rational>(raw, sink, err) : cmd_compare<double>(raw, sink, err);
    }
    return cmd_sweep(raw, sink, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const BranchError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const InputError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const TruncationError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const ConvergenceError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const ResourceError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace twoperiodic::cli
