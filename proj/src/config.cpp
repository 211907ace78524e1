#include "nlmc/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "nlmc/errors.hpp"

namespace nlmc {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double to_double(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw config_error("config: value of '" + key + "' is not a number: '" + v + "'");
  }
}

long long to_ll(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const long long d = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw config_error("config: value of '" + key + "' is not an integer: '" + v + "'");
  }
}

const std::string* find(const IniDocument& doc, const std::string& section,
                        const std::string& key) {
  auto sit = doc.find(section);
  if (sit == doc.end()) return nullptr;
  auto kit = sit->second.find(key);
  return kit == sit->second.end() ? nullptr : &kit->second;
}

std::string require(const IniDocument& doc, const std::string& section, const std::string& key) {
  const std::string* v = find(doc, section, key);
  if (!v) throw config_error("config: missing [" + section + "] " + key);
  return *v;
}

}  // namespace

IniDocument parse_ini(const std::string& text) {
  IniDocument doc;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error("config line " + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw config_error("config line " + std::to_string(lineno) + ": empty key");
    doc[section][key] = value;
  }
  return doc;
}

IniDocument load_ini_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ini(buf.str());
}

DataFn example_a_phi() {
  return [](double t, double x) {
    return std::exp(5.0 * t) * (1.0 + x) * (1.0 - x) * (1.0 - x) * x;
  };
}

DataFn example_b_forcing() {
  return [](double t, double x) {
    return std::sin(10.0 * t) * (1.0 - x) * x * std::sin(3.14159265358979323846 * x);
  };
}

namespace {

Kernel kernel_from(const IniDocument& doc) {
  const std::string type = require(doc, "kernel", "type");
  if (type == "fractional") return Kernel::fractional(to_double(require(doc, "kernel", "alpha"), "alpha"));
  if (type == "truncated")
    return Kernel::truncated(to_double(require(doc, "kernel", "alpha"), "alpha"),
                             to_double(require(doc, "kernel", "delta"), "delta"));
  if (type == "tempered")
    return Kernel::tempered(to_double(require(doc, "kernel", "alpha"), "alpha"),
                            to_double(require(doc, "kernel", "lambda"), "lambda"));
  if (type == "atomic")
    return Kernel::atomic(to_double(require(doc, "kernel", "lambda"), "lambda"),
                          to_double(require(doc, "kernel", "delta"), "delta"));
  if (type == "variable-order") {
    auto expr = std::make_shared<Expression>(Expression::parse(require(doc, "kernel", "alpha")));
    return Kernel::variable_order([expr](double t) { return expr->eval(t, 0.0); });
  }
  throw config_error("config: unknown kernel type '" + type + "'");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  const IniDocument doc = parse_ini(text);
  ExperimentConfig cfg;
  cfg.raw_text = text;
  cfg.problem_id = require(doc, "problem", "id");
  if (cfg.problem_id != "example-a" && cfg.problem_id != "example-b" &&
      cfg.problem_id != "atomic" && cfg.problem_id != "custom")
    throw config_error("config: unknown problem id '" + cfg.problem_id + "'");

  if (cfg.problem_id == "atomic") {
    if (find(doc, "kernel", "type")) {
      cfg.kernel = kernel_from(doc);
      if (cfg.kernel.family() != KernelFamily::atomic)
        throw config_error("config: problem 'atomic' requires an atomic kernel");
    } else {
      cfg.kernel = Kernel::atomic(1.0, 0.2);
    }
  } else {
    cfg.kernel = kernel_from(doc);
  }
  if (cfg.problem_id == "custom") {
    if (const std::string* p = find(doc, "problem", "phi")) cfg.phi_expr = Expression::parse(*p);
    if (const std::string* f = find(doc, "problem", "f")) cfg.f_expr = Expression::parse(*f);
  }

  cfg.T = to_double(require(doc, "problem", "T"), "T");
  if (!(cfg.T > 0.0)) throw config_error("config: T must be positive");

  cfg.h = to_double(require(doc, "mc", "h"), "h");
  {
    // h must divide (-1,1) into an even number of cells.
    const double cells = 2.0 / cfg.h;
    const long M = std::lround(cells);
    if (M < 2 || M % 2 != 0 || std::fabs(cells - static_cast<double>(M)) > 1e-9 * cells)
      throw config_error("config: h must split (-1,1) into an even integer number of cells");
  }
  cfg.trials = to_ll(require(doc, "mc", "trials"), "trials");
  if (cfg.trials < 100) throw config_error("config: trials must be >= 100");
  cfg.seed = static_cast<std::uint64_t>(to_ll(require(doc, "mc", "seed"), "seed"));

  {
    std::istringstream ts(require(doc, "mc", "times"));
    std::string tok;
    while (std::getline(ts, tok, ',')) {
      tok = trim(tok);
      if (tok.empty()) continue;
      const double t = to_double(tok, "times");
      if (!(t > 0.0) || t > cfg.T * (1.0 + 1e-12))
        throw config_error("config: every target time must lie in (0, T]");
      cfg.times.push_back(t);
    }
    if (cfg.times.empty()) throw config_error("config: no target times given");
  }

  if (const std::string* v = find(doc, "fd", "M")) cfg.fd_space_cells = static_cast<int>(to_ll(*v, "M"));
  if (const std::string* v = find(doc, "fd", "k")) cfg.fd_time_step = to_double(*v, "k");
  if (const std::string* v = find(doc, "output", "dir")) cfg.out_dir = *v;
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

ProblemData ExperimentConfig::make_problem() const {
  ProblemData p;
  p.kernel = kernel;
  p.T = T;
  p.lattice = LatticeConfig::with_mesh(h);
  if (problem_id == "example-a" || problem_id == "atomic") {
    p.phi = example_a_phi();
  } else if (problem_id == "example-b") {
    p.f = example_b_forcing();
  } else {
    if (!phi_expr.empty()) {
      const Expression e = phi_expr;
      p.phi = [e](double t, double x) { return e.eval(t, x); };
    }
    if (!f_expr.empty()) {
      const Expression e = f_expr;
      p.f = [e](double t, double x) { return e.eval(t, x); };
    }
  }
  return p;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace nlmc
