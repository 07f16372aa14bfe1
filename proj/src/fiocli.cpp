#include "fracio/fiocli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fracio/errors.hpp"
#include "fracio/fracoracle.hpp"

namespace fracio::cli {
namespace {

namespace fs = std::filesystem;

constexpr double kVerifyThreshold = 1e-2;

const std::set<std::string> kModelFields = {"n",  "A",  "B",  "alpha",
                                            "Y0", "Y0_rate", "X0", "C0",
                                            "consumption_rates"};

std::string g10(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Whole-line // comments become blank lines so JSON error positions keep
// their line numbers.
std::string strip_comments(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos && line.compare(first, 2, "//") == 0) line.clear();
    out += line;
    out += '\n';
  }
  return out;
}

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

int line_of_field(const std::string& text, const std::string& field) {
  const auto pos = text.find("\"" + field + "\"");
  return pos == std::string::npos ? 0 : line_of_offset(text, pos);
}

struct FieldReader {
  const json& doc;
  const std::string& text;
  std::size_t n;

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    const int line = line_of_field(text, field);
    std::string msg = "field " + field + ": " + what;
    if (line > 0) msg += " (line " + std::to_string(line) + ")";
    throw ParseError(msg, field, line);
  }

  RealVector vector(const std::string& field, bool allow_scalar) const {
    const json& v = doc.at(field);
    if (allow_scalar && v.is_number()) return RealVector{v.get<double>()};
    if (!v.is_array()) fail(field, "expected an array of " + std::to_string(n) + " numbers");
    RealVector out;
    for (const auto& x : v) {
      if (!x.is_number()) fail(field, "entries must be numbers");
      out.push_back(x.get<double>());
    }
    if (out.size() != n && !(allow_scalar && out.size() == 1))
      fail(field, "expected " + std::to_string(n) + " entries, got " + std::to_string(out.size()));
    return out;
  }

  RealMatrix matrix(const std::string& field) const {
    const json& v = doc.at(field);
    if (!v.is_array() || v.size() != n)
      fail(field, "expected " + std::to_string(n) + " rows (an n x n array)");
    std::vector<RealVector> rows;
    for (std::size_t i = 0; i < n; ++i) {
      const json& r = v[i];
      if (!r.is_array() || r.size() != n)
        fail(field, "row " + std::to_string(i + 1) + " must have " + std::to_string(n) +
                        " entries (matrix must be square)");
      RealVector row;
      for (const auto& x : r) {
        if (!x.is_number()) fail(field, "entries must be numbers");
        row.push_back(x.get<double>());
      }
      rows.push_back(std::move(row));
    }
    return RealMatrix::from_rows(rows);
  }
};

RealVector expand(RealVector v, std::size_t n) {
  if (v.size() == 1 && n > 1) v.assign(n, v.front());
  return v;
}

json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_sig10(v);
}

json cnum(complex c) { return json{{"re", num(c.real())}, {"im", num(c.imag())}}; }

json vec(const RealVector& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

json cvec(const ComplexVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(cnum(x));
  return a;
}

json mat(const RealMatrix& m) {
  json a = json::array();
  for (const auto& r : m.rows()) a.push_back(vec(r));
  return a;
}

json round_all(const json& j) {
  if (j.is_number_float()) return num(j.get<double>());
  if (j.is_array()) {
    json a = json::array();
    for (const auto& x : j) a.push_back(round_all(x));
    return a;
  }
  if (j.is_object()) {
    json o = json::object();
    for (auto it = j.begin(); it != j.end(); ++it) o[it.key()] = round_all(it.value());
    return o;
  }
  return j;
}

json model_echo(const IOModel& m) {
  json j{{"n", m.n},   {"A", mat(m.A)},   {"B", mat(m.B)},
         {"alpha", vec(m.alpha)}, {"Y0", vec(m.Y0)}, {"C0", vec(m.C0)},
         {"consumption_rates", vec(m.consumption_rates)}};
  if (m.Y0_rate) j["Y0_rate"] = vec(*m.Y0_rate);
  if (m.X0) j["X0"] = vec(*m.X0);
  return j;
}

json findings_json(const std::vector<Finding>& findings) {
  json a = json::array();
  for (const auto& f : findings) a.push_back({{"severity", to_string(f.severity)}, {"message", f.message}});
  return a;
}

const char* solution_kind(const IOModel& m) {
  if (!m.closed()) return "open";
  return m.uniform_order() ? "closed uniform" : "closed sectoral";
}

json opt_index(const std::optional<std::size_t>& k) {
  return k ? json(*k + 1) : json(nullptr);
}

const char* dominance_name(Dominance d) {
  switch (d) {
    case Dominance::exponential: return "exponential";
    case Dominance::algebraic_decay: return "algebraic decay";
    case Dominance::none: return "none";
  }
  return "none";
}

json report_from(const IOModel& model, const std::vector<Finding>& findings,
                 const ModalSolution& sol, const AnalysisReport& r) {
  json j;
  j["status"] = "ok";
  j["model"] = model_echo(model);
  j["findings"] = findings_json(findings);
  j["solution"] = solution_kind(model);

  ComplexVector ev;
  for (const auto& m : sol.modes) ev.push_back(m.eigenvalue);
  j["eigenvalues"] = cvec(ev);
  j["perron"] = r.perron_available ? num(r.perron_value) : json(nullptr);
  j["lambda_s"] = r.perron_available ? num(r.lambda_s) : json(nullptr);

  json modes = json::array();
  for (std::size_t k = 0; k < sol.modes.size(); ++k) {
    const Mode& m = sol.modes[k];
    const ModeRate& mr = r.modes[k];
    ComplexVector amp;
    for (const auto& v : m.eigenvector) amp.push_back(m.coeff1 * v);
    json mj{{"index", k + 1},
            {"eigenvalue", cnum(m.eigenvalue)},
            {"eigenvector", cvec(m.eigenvector)},
            {"coefficient", cnum(m.coeff1)},
            {"amplitudes", cvec(amp)},
            {"order", num(mr.order)},
            {"effective_rate", cnum(mr.effective_rate)},
            {"regime", mr.regime == specfun::Regime::exponential ? "exponential" : "algebraic"},
            {"active", mr.active},
            {"perron", mr.perron}};
    if (m.ml_beta2) mj["coefficient_rate"] = cnum(m.coeff2);
    modes.push_back(std::move(mj));
  }
  j["modes"] = std::move(modes);
  if (!sol.uniform_order()) {
    json rows = json::array();
    for (const auto& row : r.sector_rates) rows.push_back(cvec(row));
    j["sector_rates"] = std::move(rows);
  }
  j["dominance"] = dominance_name(r.dominance);
  j["dominant_mode"] = opt_index(r.dominant_mode);
  j["dominant_eigenvalue"] =
      r.dominant_mode ? cnum(sol.modes[*r.dominant_mode].eigenvalue) : json(nullptr);
  j["memoryless_dominant_mode"] = opt_index(r.memoryless_dominant_mode);
  j["domination_changed"] = r.domination_changed;
  j["admissible"] = r.admissible;
  j["admissibility_reason"] = r.admissibility_reason;
  j["effective_technological_rate"] =
      r.perron_available ? num(r.effective_technological_rate) : json(nullptr);
  j["consumption_feasible"] = r.consumption_feasible;
  j["max_consumption_rate"] = num(r.max_consumption_rate);
  j["warnings"] = r.warnings;
  return j;
}

RealVector make_grid(double t_max, int steps) {
  if (t_max == 0.0) return {0.0};
  RealVector g(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) g[static_cast<std::size_t>(i)] = double(i) * t_max / double(steps);
  return g;
}

bool wants(const RunConfig& c, const std::string& f) {
  return std::find(c.formats.begin(), c.formats.end(), f) != c.formats.end();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

fs::path prepare_output(const RunConfig& c) {
  fs::path dir(c.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create output directory " + dir.string());
  return dir;
}

Trajectory map_rows(const Trajectory& tr, const RealMatrix& m) {
  Trajectory out = tr;
  for (auto& row : out.values) row = m * row;
  return out;
}

void check_run_config(const RunConfig& c) {
  if (!(c.t_max >= 0.0) || !std::isfinite(c.t_max)) throw CLI::ValidationError("--t-max must be >= 0");
  if (c.steps < 2) throw CLI::ValidationError("--steps must be at least 2");
  for (const auto& f : c.formats)
    if (f != "csv" && f != "json" && f != "svg")
      throw CLI::ValidationError("unknown format '" + f + "' (expected csv, json, svg)");
}

IOModel apply_alpha(IOModel m, const RealVector& alpha) {
  if (alpha.size() != 1 && alpha.size() != m.n)
    throw ValidationError("alpha override has " + std::to_string(alpha.size()) + " entries, expected 1 or " +
                          std::to_string(m.n));
  m.alpha = expand(alpha, m.n);
  return m;
}

void require_valid(const IOModel& m, std::vector<Finding>& findings) {
  findings = validate(m);
  if (!has_fatal(findings)) return;
  std::string msg;
  for (const auto& f : findings)
    if (f.severity == Severity::fatal) msg += (msg.empty() ? "" : "; ") + f.message;
  throw ValidationError(msg);
}

int cmd_validate(const RunConfig& c, std::ostream& out) {
  std::ifstream f(c.model_path, std::ios::binary);
  if (!f) throw ParseError("cannot read model file " + c.model_path, "model");
  std::stringstream ss;
  ss << f.rdbuf();
  IOModel m = parse_model(ss.str());
  if (c.alpha_override) m = apply_alpha(m, *c.alpha_override);
  const auto findings = validate(m);
  for (const auto& fd : findings) out << to_string(fd.severity) << ": " << fd.message << "\n";
  if (has_fatal(findings)) return kInvalid;
  out << "valid (n = " << m.n << ")\n";
  return kOk;
}

struct Prepared {
  IOModel model;
  std::vector<Finding> findings;
};

Prepared prepare(const RunConfig& c) {
  LoadedModel lm = load_model(c.model_path);
  Prepared p{std::move(lm.model), std::move(lm.findings)};
  if (c.alpha_override) {
    p.model = apply_alpha(p.model, *c.alpha_override);
    require_valid(p.model, p.findings);
  }
  if (c.closed && !p.model.closed()) throw ValidationError("closed run requested but C0 nonzero");
  return p;
}

int cmd_analyze(const RunConfig& c, std::ostream& out) {
  const Prepared p = prepare(c);
  json rep = analysis_report(p.model, p.findings);
  rep["command"] = "analyze";
  const std::string text = dump_report(rep);
  out << text;
  if (c.output_dir != "." || wants(c, "json")) {
    if (c.output_dir != ".") write_file(prepare_output(c) / "report.json", text);
  }
  return kOk;
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
  const Prepared p = prepare(c);
  const IOModel& m = p.model;
  const DerivedMatrices d = derive(m);
  const RealVector grid = make_grid(c.t_max, c.steps);

  const ModalSolution ysol = solve(m, d);
  const ModalSolution xsol = (m.closed() && m.uniform_order() && m.X0)
                                 ? solve_closed_uniform(m, d, Variable::gross_product)
                                 : gross_solution_from_final(ysol, d);
  const Trajectory Y = evaluate_trajectory(ysol, grid);
  const Trajectory X = evaluate_trajectory(xsol, grid);
  const Trajectory Z = map_rows(X, m.A);
  Trajectory I;
  Trajectory C;
  if (m.closed()) {
    I = investment_trajectory(m, d, xsol, grid);
  } else {
    // I = B D^a X = (E - A) X - C on open-model solutions
    C = consumption_trajectory(ysol, grid);
    I = map_rows(X, RealMatrix::identity(m.n) - m.A);
    for (std::size_t i = 0; i < I.values.size(); ++i)
      for (std::size_t j = 0; j < m.n; ++j) I.values[i][j] -= C.values[i][j];
  }

  const fs::path dir = prepare_output(c);
  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& content) {
    write_file(dir / name, content);
    written.push_back(name);
  };
  if (wants(c, "csv")) {
    emit("Y.csv", trajectory_csv(Y));
    emit("X.csv", trajectory_csv(X));
    emit("Z.csv", trajectory_csv(Z));
    emit("I.csv", trajectory_csv(I));
    if (!m.closed()) emit("C.csv", trajectory_csv(C));
  }
  if (wants(c, "svg")) emit("trajectories.svg", trajectory_svg(Y, "final product Y(t)"));
  if (wants(c, "json")) {
    json rep = report_from(m, p.findings, ysol, analyze(m, d, ysol));
    rep["command"] = "simulate";
    rep["simulation"] = {{"t_max", num(c.t_max)}, {"steps", c.steps}, {"points", grid.size()}};
    emit("report.json", dump_report(rep));
  }
  for (const auto& w : written) out << (dir / w).string() << "\n";
  return kOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const Prepared p = prepare(c);
  const IOModel& m = p.model;
  const DerivedMatrices d = derive(m);
  ModalSolution sol = solve(m, d);
  const AnalysisReport analysis = analyze(m, d, sol);
  if (c.corrupt) sol.modes.front().eigenvector.front() *= 1.1;

  if (c.t_max <= 0.0) throw CLI::ValidationError("verify needs --t-max > 0");
  const double h = c.t_max / double(c.steps);
  const double t_min = std::min(c.t_min, 0.5 * c.t_max);
  const ResidualReport res = residual_check(sol, m, d, h, c.t_max, t_min);

  json ver;
  ver["step"] = num(h);
  ver["t_min"] = num(std::max(t_min, 4.0 * h));
  ver["t_max"] = num(c.t_max);
  ver["max_residual"] = num(res.max);
  ver["mean_residual"] = num(res.mean);
  ver["threshold"] = kVerifyThreshold;
  ver["corrupted"] = c.corrupt;
  const bool passed = res.max <= kVerifyThreshold;
  ver["passed"] = passed;

  try {
    const std::size_t steps = static_cast<std::size_t>(c.steps);
    std::optional<SampledVectorFunction> forcing;
    RealVector grid(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) grid[i] = h * double(i);
    if (sol.forced_part) {
      SampledVectorFunction f{h, {}};
      for (auto row : consumption_trajectory(sol, grid).values) {
        row = d.Lambda * row;
        for (double& v : row) v = -v;
        f.values.push_back(std::move(row));
      }
      forcing = std::move(f);
    }
    const Trajectory num_tr = fde_integrate(d.Lambda, m.alpha, m.Y0, m.Y0_rate, forcing, h, steps);
    const Trajectory an = evaluate_trajectory(sol, grid);
    double gap = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (grid[i] < t_min) continue;
      double diff = 0.0, norm = 0.0;
      for (std::size_t j = 0; j < m.n; ++j) {
        diff += std::pow(num_tr.values[i][j] - an.values[i][j], 2);
        norm += std::pow(an.values[i][j], 2);
      }
      const double g = std::sqrt(diff / norm);
      gap = std::isfinite(g) ? std::max(gap, g) : std::numeric_limits<double>::infinity();
    }
    ver["integrator_gap"] = num(gap);
  } catch (const Error& e) {
    ver["integrator_gap"] = nullptr;
    ver["integrator_error"] = e.what();
  }

  json rep = report_from(m, p.findings, sol, analysis);
  rep["command"] = "verify";
  rep["verification"] = std::move(ver);
  const std::string text = dump_report(rep);
  out << text;
  if (wants(c, "json") && c.output_dir != ".") write_file(prepare_output(c) / "report.json", text);
  return passed ? kOk : kVerifyFailed;
}

std::string alpha_label(const RealVector& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? " " : "") + g10(a[i]);
  return s;
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.alpha_list.empty()) throw CLI::ValidationError("sweep needs at least one --alpha value");
  LoadedModel lm = load_model(c.model_path);
  if (c.closed && !lm.model.closed()) throw ValidationError("closed run requested but C0 nonzero");
  std::string csv =
      "alpha,effective_technological_rate,dominant_mode,dominant_eigenvalue,dominance,admissible,"
      "domination_changed\n";
  bool noted = false;
  for (const auto& a : c.alpha_list) {
    IOModel m = apply_alpha(lm.model, a);
    if (m.needs_initial_rate() && !m.Y0_rate) {
      m.Y0_rate = RealVector(m.n, 0.0);
      if (!noted) err << "note: no Y0_rate in model; using zero initial speed for alpha > 1\n";
      noted = true;
    }
    std::vector<Finding> findings;
    require_valid(m, findings);
    const DerivedMatrices d = derive(m);
    const ModalSolution sol = solve(m, d);
    const AnalysisReport r = analyze(m, d, sol);
    csv += alpha_label(a) + ",";
    csv += (r.perron_available ? g10(r.effective_technological_rate) : std::string("nan")) + ",";
    csv += (r.dominant_mode ? std::to_string(*r.dominant_mode + 1) : std::string("none")) + ",";
    csv += (r.dominant_mode ? g10(sol.modes[*r.dominant_mode].eigenvalue.real()) : std::string("nan")) + ",";
    csv += std::string(dominance_name(r.dominance)) + ",";
    csv += std::string(r.admissible ? "true" : "false") + ",";
    csv += std::string(r.domination_changed ? "true" : "false") + "\n";
  }
  const fs::path dir = prepare_output(c);
  write_file(dir / "sweep.csv", csv);
  out << csv;
  return kOk;
}

}  // namespace

IOModel parse_model(const std::string& raw) {
  const std::string text = strip_comments(raw);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const int line = line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("model file is not valid JSON (line " + std::to_string(line) + "): " + e.what(),
                     "", line);
  }
  if (!doc.is_object()) throw ParseError("model file must hold a JSON object", "", 1);
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (!kModelFields.count(it.key()))
      throw ParseError("unknown field " + it.key(), it.key(), line_of_field(text, it.key()));
  for (const char* req : {"n", "A", "B", "alpha", "Y0"})
    if (!doc.contains(req)) throw ParseError(std::string("missing field ") + req, req, 0);

  const json& jn = doc["n"];
  if (!jn.is_number_integer() || jn.get<long long>() < 1)
    throw ParseError("field n: expected a positive integer", "n", line_of_field(text, "n"));
  const auto n = static_cast<std::size_t>(jn.get<long long>());
  const FieldReader rd{doc, text, n};

  IOModel m = IOModel::make(rd.matrix("A"), rd.matrix("B"), rd.vector("alpha", true), rd.vector("Y0", false));
  if (doc.contains("Y0_rate")) m.Y0_rate = rd.vector("Y0_rate", false);
  if (doc.contains("X0")) m.X0 = rd.vector("X0", false);
  if (doc.contains("C0")) m.C0 = rd.vector("C0", false);
  if (doc.contains("consumption_rates"))
    m.consumption_rates = expand(rd.vector("consumption_rates", true), n);
  return m;
}

LoadedModel load_model(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot read model file " + path, "model");
  std::stringstream ss;
  ss << f.rdbuf();
  LoadedModel lm{parse_model(ss.str()), {}};
  require_valid(lm.model, lm.findings);
  return lm;
}

RealVector parse_alpha(const std::string& text) {
  RealVector out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError("empty alpha entry in '" + text + "'", "alpha");
    const std::string tok = item.substr(b, e - b + 1);
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || !std::isfinite(v))
      throw ParseError("bad alpha value '" + tok + "'", "alpha");
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("empty alpha value", "alpha");
  return out;
}

double round_sig10(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  return std::strtod(g10(v).c_str(), nullptr);
}

std::string dump_report(const json& report) { return round_all(report).dump(2) + "\n"; }

std::string trajectory_csv(const Trajectory& tr) {
  const std::size_t n = tr.values.empty() ? 0 : tr.values.front().size();
  std::string s = "t";
  for (std::size_t j = 0; j < n; ++j) s += ",sector_" + std::to_string(j + 1);
  s += "\n";
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    s += g10(tr.t[i]);
    for (double v : tr.values[i]) s += "," + g10(v);
    s += "\n";
  }
  return s;
}

std::string trajectory_svg(const Trajectory& tr, const std::string& title) {
  constexpr double W = 800, H = 500, L = 80, R = 30, T = 40, B = 60;
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  double tmin = 0.0, tmax = tr.t.empty() ? 1.0 : tr.t.back();
  if (tmax <= tmin) tmax = tmin + 1.0;
  double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
  for (const auto& row : tr.values)
    for (double v : row)
      if (std::isfinite(v)) {
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
      }
  if (!std::isfinite(ymin)) ymin = 0.0, ymax = 1.0;
  if (ymax <= ymin) ymin -= 0.5, ymax += 0.5;
  auto px = [&](double t) { return L + (t - tmin) / (tmax - tmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

  std::ostringstream s;
  char buf[128];
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\" width=\"800\" height=\"500\">\n";
  s << "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
  s << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
    << title << "</text>\n";
  std::snprintf(buf, sizeof buf, "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                L, H - B, W - R, H - B);
  s << buf;
  std::snprintf(buf, sizeof buf, "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                L, T, L, H - B);
  s << buf;
  for (int k = 0; k <= 5; ++k) {
    const double t = tmin + (tmax - tmin) * k / 5.0;
    const double y = ymin + (ymax - ymin) * k / 5.0;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                  "font-size=\"11\">%s</text>\n",
                  px(t), H - B + 18, g10(round_sig10(std::stod(g10(t)))).c_str());
    s << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" font-family=\"sans-serif\" "
                  "font-size=\"11\">%.4g</text>\n",
                  L - 6, py(y) + 4, y);
    s << buf;
  }
  s << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">t</text>\n";
  s << "<text x=\"20\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
    << "font-size=\"13\" transform=\"rotate(-90 20 " << (T + H - B) / 2 << ")\">value</text>\n";

  const std::size_t n = tr.values.empty() ? 0 : tr.values.front().size();
  for (std::size_t j = 0; j < n; ++j) {
    const char* color = colors[j % 8];
    std::string pts;
    auto flush = [&] {
      if (!pts.empty())
        s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << pts
          << "\"/>\n";
      pts.clear();
    };
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
      const double v = tr.values[i][j];
      if (!std::isfinite(v)) {
        flush();
        continue;
      }
      std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", pts.empty() ? "" : " ", px(tr.t[i]), py(v));
      pts += buf;
    }
    flush();
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"12\" "
                  "fill=\"%s\">sector %zu</text>\n",
                  W - R - 90, T + 16.0 * double(j + 1), color, j + 1);
    s << buf;
  }
  s << "</svg>\n";
  return s.str();
}

json analysis_report(const IOModel& model, const std::vector<Finding>& findings) {
  const DerivedMatrices d = derive(model);
  const ModalSolution sol = solve(model, d);
  return report_from(model, findings, sol, analyze(model, d, sol));
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    check_run_config(c);
    if (c.command == "validate") return cmd_validate(c, out);
    if (c.command == "analyze") return cmd_analyze(c, out);
    if (c.command == "simulate") return cmd_simulate(c, out);
    if (c.command == "verify") return cmd_verify(c, out);
    if (c.command == "sweep") return cmd_sweep(c, out, err);
    err << "error: unknown command '" << c.command << "'\n";
    return kUsage;
  } catch (const CLI::Error& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInvalid;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kInvalid;
  } catch (const Error& e) {
    json rep{{"command", c.command}, {"status", "error"}, {"error", e.what()}};
    out << dump_report(rep);
    err << "solver error: " << e.what() << "\n";
    return kSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kSolver;
  }
}

int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Leontief input-output models with power-law memory"};
  app.name("fracio");
  RunConfig c;
  std::vector<std::string> alphas;
  std::string formats = "csv,json,svg";
  app.add_option("command", c.command, "validate | analyze | simulate | verify | sweep")
      ->required()
      ->check(CLI::IsMember({"validate", "analyze", "simulate", "verify", "sweep"}));
  app.add_option("--model", c.model_path, "model file")->required();
  app.add_option("--t-max", c.t_max, "end of the time grid");
  app.add_option("--steps", c.steps, "number of time intervals");
  app.add_option("--alpha", alphas,
                 "order override: v or v1,v2,...; sweep accepts several (repeat or separate with ';')");
  app.add_option("--out", c.output_dir, "output directory");
  app.add_option("--format", formats, "comma-separated subset of csv,json,svg");
  app.add_flag("--closed", c.closed, "require a closed model (C0 = 0)");
  app.add_option("--t-min", c.t_min, "verify: start of the residual window");
  app.add_flag("--debug-corrupt-coefficient", c.corrupt, "verify: perturb one modal amplitude by 10%")
      ->group("");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  c.formats.clear();
  {
    std::stringstream ss(formats);
    std::string f;
    while (std::getline(ss, f, ','))
      if (!f.empty()) c.formats.push_back(f);
  }
  try {
    std::vector<RealVector> parsed;
    for (const auto& a : alphas) {
      std::stringstream ss(a);
      std::string item;
      while (std::getline(ss, item, ';'))
        if (item.find_first_not_of(" \t") != std::string::npos) parsed.push_back(parse_alpha(item));
    }
    if (c.command == "sweep") {
      c.alpha_list = std::move(parsed);
    } else if (parsed.size() > 1) {
      err << "usage error: only sweep accepts several --alpha values\n";
      return kUsage;
    } else if (parsed.size() == 1) {
      c.alpha_override = parsed.front();
    }
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  return run(c, out, err);
}

}  // namespace fracio::cli
