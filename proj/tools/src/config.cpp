#include <cmath>

#include "musielak/cli.hpp"

namespace musielak::cli {

using nlohmann::json;

namespace {

/// A JSON object together with its path, for error messages.
class Node {
 public:
  Node(const json* j, std::string path) : j_(j), path_(std::move(path)) {}

  bool has(const std::string& key) const { return j_->contains(key); }

  Node child(const std::string& key) const {
    const std::string p = path_.empty() ? key : path_ + "." + key;
    if (!j_->contains(key)) throw ConfigError(p, "missing field");
    const json& c = j_->at(key);
    if (!c.is_object()) throw ConfigError(p, "expected an object");
    return Node(&c, p);
  }

  std::string path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  double number(const std::string& key) const {
    if (!has(key)) throw ConfigError(path(key), "missing field");
    const json& v = j_->at(key);
    if (!v.is_number()) throw ConfigError(path(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(path(key), "expected a finite number");
    return d;
  }

  double number(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  double positive(const std::string& key, double fallback) const {
    const double v = number(key, fallback);
    if (!(v > 0.0)) throw ConfigError(path(key), "must be > 0");
    return v;
  }

  int integer(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_->at(key);
    if (!v.is_number_integer()) throw ConfigError(path(key), "expected an integer");
    return v.get<int>();
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_->at(key);
    if (!v.is_boolean()) throw ConfigError(path(key), "expected true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_->at(key);
    if (!v.is_string()) throw ConfigError(path(key), "expected a string");
    return v.get<std::string>();
  }

  /// A point given either as a number (N = 1) or an array of N numbers.
  Point point(const std::string& key, int dim, Point fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_->at(key);
    Point p{};
    if (v.is_number() && dim == 1) {
      p[0] = v.get<double>();
      return p;
    }
    if (!v.is_array() || static_cast<int>(v.size()) != dim)
      throw ConfigError(path(key), "expected an array of " + std::to_string(dim) + " numbers");
    for (int k = 0; k < dim; ++k) {
      if (!v[k].is_number()) throw ConfigError(path(key), "expected numbers");
      p[k] = v[k].get<double>();
    }
    return p;
  }

  template <class T>
  std::vector<T> list(const std::string& key) const {
    if (!has(key)) return {};
    const json& v = j_->at(key);
    if (!v.is_array()) throw ConfigError(path(key), "expected an array");
    std::vector<T> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string p = path(key) + "[" + std::to_string(i) + "]";
      if constexpr (std::is_integral_v<T>) {
        if (!v[i].is_number_integer()) throw ConfigError(p, "expected an integer");
      } else {
        if (!v[i].is_number()) throw ConfigError(p, "expected a number");
      }
      out.push_back(v[i].get<T>());
    }
    return out;
  }

 private:
  const json* j_;
  std::string path_;
};

NFunction parse_nfunction(const Node& n) {
  const std::string family = n.string("family", "power");
  const int dim = n.integer("dim", 1);
  if (dim != 1 && dim != 2) throw ConfigError(n.path("dim"), "must be 1 or 2");
  try {
    if (family == "power") return NFunction::power(n.number("p", 2.0), dim);
    ExponentMap map{n.number("p_mid", 2.0), n.number("p_amp", 0.0), n.number("freq", 1.0)};
    if (family == "variable_exponent") return NFunction::variable_exponent(map, dim);
    if (family == "orlicz") return NFunction::orlicz(n.number("q", 2.0), n.positive("c", 1.0), dim);
    if (family == "product") return NFunction::product(map, n.positive("c", 1.0), dim);
  } catch (const InvalidNFunction& e) {
    throw ConfigError(n.path("family"), e.what());
  }
  throw ConfigError(n.path("family"),
                    "unknown family '" + family + "' (power, variable_exponent, orlicz, product)");
}

Domain parse_domain(const Node& n, int dim) {
  const std::string kind = n.string("kind", "hypograph");
  try {
    if (kind == "hypograph")
      return Domain::hypograph(dim, HypographProfile{n.number("level", 0.0),
                                                     n.number("amplitude", 0.0),
                                                     n.number("frequency", 1.0)});
    if (kind == "box") return Domain::box(dim, n.point("lo", dim, {}), n.point("hi", dim, {}));
    if (kind == "ball")
      return Domain::ball(dim, n.point("center", dim, {}), n.positive("radius", 1.0));
    if (kind == "full_space") return Domain::full_space(dim);
  } catch (const ParameterError& e) {
    throw ConfigError(n.path("kind"), e.what());
  }
  throw ConfigError(n.path("kind"), "unknown domain '" + kind + "' (hypograph, box, ball, full_space)");
}

FunctionSpec parse_function(const Node& n, int dim) {
  FunctionSpec f;
  f.name = n.string("name", "tent");
  if (f.name != "tent" && f.name != "bump" && f.name != "windowed_constant" &&
      f.name != "zero" && f.name != "singular_power")
    throw ConfigError(n.path("name"), "unknown function '" + f.name +
                                          "' (tent, bump, windowed_constant, zero, singular_power)");
  f.center = n.point("center", dim, {});
  f.half_width = n.positive("half_width", 1.0);
  f.radius = n.positive("radius", 1.0);
  f.height = n.number("height", 1.0);
  f.lo = n.point("lo", dim, {});
  f.hi = n.point("hi", dim, {});
  f.value = n.number("value", 1.0);
  f.d = n.positive("d", 3.0);
  if (f.name == "singular_power" && dim != 1) throw ConfigError(n.path("name"), "singular_power is 1-D");
  return f;
}

}  // namespace

ClosedForm FunctionSpec::closed_form(int dim, const GridSpec& spec) const {
  if (name == "tent") return ClosedForm::tent(center, half_width, height, dim);
  if (name == "bump") return ClosedForm::bump(center, radius, height, dim);
  if (name == "windowed_constant") return ClosedForm::windowed_constant(lo, hi, value, dim);
  if (name == "zero") return ClosedForm::zero(dim);
  // x^{-1/d} on [0, 1), capped at the value of the smallest positive node.
  const double cap = std::pow(spec.h(), -1.0 / d);
  const double dd = d;
  const double hg = spec.h();
  return {"singular_power", 1,
          [cap, dd, hg](const Point& x) {
            if (std::abs(x[0]) < 0.5 * hg) return cap;
            if (x[0] > 0.0 && x[0] < 1.0) return std::pow(x[0], -1.0 / dd);
            return 0.0;
          },
          std::pair{Point{0.0, 0.0}, Point{1.0, 0.0}}};
}

const GridSpec& ExperimentConfig::require_grid() const {
  if (!grid) throw ConfigError("grid", "missing field");
  return *grid;
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("$", "config must be a JSON object");
  const Node root(&doc, "");
  ExperimentConfig c;

  if (root.has("nfunction")) c.nf = parse_nfunction(root.child("nfunction"));
  const int dim = c.nf.dim();
  c.domain = root.has("domain") ? parse_domain(root.child("domain"), dim) : Domain::hypograph(dim);
  if (root.has("function")) c.function = parse_function(root.child("function"), dim);

  c.s = root.number("s", 0.25);
  if (!(c.s > 0.0 && c.s < 1.0)) throw ConfigError("s", "must lie in (0, 1)");

  if (root.has("grid")) {
    const Node g = root.child("grid");
    try {
      c.grid.emplace(dim, g.point("lo", dim, {}), g.point("hi", dim, {}), g.integer("n", 0));
    } catch (const ParameterError& e) {
      throw ConfigError("grid", e.what());
    }
  }
  c.levels = root.integer("levels", 3);
  if (c.levels < 1) throw ConfigError("levels", "must be >= 1");

  const std::string kind = root.string("kind", "translate");
  if (kind == "translate")
    c.kind = LadderKind::Translate;
  else if (kind == "cutoff")
    c.kind = LadderKind::Cutoff;
  else if (kind == "mollify")
    c.kind = LadderKind::Mollify;
  else
    throw ConfigError("kind", "unknown ladder kind '" + kind + "' (translate, cutoff, mollify)");
  c.ladder = root.list<double>("ladder");
  c.grid_ladder = root.list<int>("grid_ladder");
  for (std::size_t i = 0; i < c.grid_ladder.size(); ++i)
    if (c.grid_ladder[i] < 2)
      throw ConfigError("grid_ladder[" + std::to_string(i) + "]", "must be >= 2");

  c.sigma = root.positive("sigma", 0.1);
  if (root.has("approximate")) {
    const Node a = root.child("approximate");
    c.approx.delta0 = a.positive("delta0", c.approx.delta0);
    c.approx.epsilon0 = a.positive("epsilon0", c.approx.epsilon0);
    c.approx.j0 = a.integer("j0", c.approx.j0);
    if (c.approx.j0 < 1) throw ConfigError("approximate.j0", "must be >= 1");
    if (a.has("j_max")) c.approx.j_max = a.integer("j_max", 1);
  }

  if (root.has("tolerances")) {
    const Node t = root.child("tolerances");
    c.rel_tol = t.positive("rel_tol", c.rel_tol);
    c.target = t.positive("target", c.target);
    c.structure_tol = t.positive("structure_tol", c.structure_tol);
    c.cauchy_tol = t.positive("cauchy_tol", c.cauchy_tol);
  }
  c.approx.rel_tol = c.rel_tol;

  if (root.has("sampling")) {
    const Node s = root.child("sampling");
    SamplingSpec& p = c.sampling;
    p.t_min = s.positive("t_min", p.t_min);
    p.t_max = s.positive("t_max", p.t_max);
    if (!(p.t_min < p.t_max)) throw ConfigError("sampling.t_max", "must exceed t_min");
    p.t_count = s.integer("t_count", p.t_count);
    p.lattice_count = s.integer("lattice_count", p.lattice_count);
    if (p.t_count < 1) throw ConfigError("sampling.t_count", "must be >= 1");
    if (p.lattice_count < 1) throw ConfigError("sampling.lattice_count", "must be >= 1");
    p.lattice_lo = s.number("lattice_lo", p.lattice_lo);
    p.lattice_hi = s.number("lattice_hi", p.lattice_hi);
    p.refinements = s.integer("refinements", p.refinements);
    if (p.refinements < 0 || p.refinements > 6)
      throw ConfigError("sampling.refinements", "must lie in [0, 6]");
    p.young_pairs = s.integer("young_pairs", p.young_pairs);
    if (p.young_pairs < 0) throw ConfigError("sampling.young_pairs", "must be >= 0");
    p.young_lo = s.positive("young_lo", p.young_lo);
    p.young_hi = s.positive("young_hi", p.young_hi);
  }

  if (root.has("fractional")) {
    const Node f = root.child("fractional");
    c.fractional.diagonal_depth = f.integer("diagonal_depth", c.fractional.diagonal_depth);
    if (c.fractional.diagonal_depth < 0 || c.fractional.diagonal_depth > 8)
      throw ConfigError("fractional.diagonal_depth", "must lie in [0, 8]");
    c.fractional.exterior_tail = f.boolean("exterior_tail", c.fractional.exterior_tail);
  }

  if (root.has("counterexample")) {
    const Node k = root.child("counterexample");
    c.ce_r = k.number("r", c.ce_r);
    c.ce_d = k.number("d", c.ce_d);
    c.ce_h = k.positive("h", c.ce_h);
    if (!(c.ce_r >= 1.0 && c.ce_r < c.ce_d))
      throw ConfigError("counterexample.r", "need 1 <= r < d");
    if (k.has("grid_ladder")) c.grid_ladder = k.list<int>("grid_ladder");
  }

  c.out = root.string("out", c.out);
  return c;
}

}  // namespace musielak::cli
