#include "amoeba/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "amoeba/membership.hpp"

namespace amoeba::io {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports "line L, column C" in its message.
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

std::int64_t as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<std::int64_t>();
}

double as_double(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  double x = j.get<double>();
  if (!std::isfinite(x)) fail(where, "number is not finite");
  return x;
}

Complex as_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where, "expected [re, im]");
  return {as_double(j[0], where + "[0]"), as_double(j[1], where + "[1]")};
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

const json& as_array(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

std::size_t as_dim(const json& j, const std::string& where) {
  std::int64_t n = as_int(j, where);
  if (n < 1) fail(where, "dimension must be positive");
  return static_cast<std::size_t>(n);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << data;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

template <class F>
auto with_context(const std::filesystem::path& path, F&& f) {
  try {
    return f();
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace

SolutionSet parse_solutions(const std::string& text) {
  const json doc = parse_text(text);
  const std::size_t n = as_dim(field(doc, "n", "$"), "$.n");
  const json& list = as_array(field(doc, "solutions", "$"), "$.solutions");
  SolutionSet sols(n);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "$.solutions[" + std::to_string(i) + "]";
    const json& coords = as_array(field(list[i], "coords", where), where + ".coords");
    if (coords.size() != n)
      fail(where + ".coords", "has " + std::to_string(coords.size()) + " coordinates, expected " + std::to_string(n));
    std::vector<Complex> z;
    for (std::size_t k = 0; k < coords.size(); ++k) z.push_back(as_complex(coords[k], where + ".coords[" + std::to_string(k) + "]"));
    std::int64_t mult = 1;
    if (list[i].contains("mult")) mult = as_int(list[i]["mult"], where + ".mult");
    if (mult < 1 || mult > 1'000'000) fail(where + ".mult", "multiplicity must be a positive integer");
    try {
      sols.add(TorusPoint(std::move(z), static_cast<int>(mult)));
    } catch (const DomainError& e) {
      fail(where, e.what());
    }
  }
  return sols;
}

std::string format_solutions(const SolutionSet& sols) {
  json list = json::array();
  for (const auto& p : sols.points()) {
    json coords = json::array();
    for (Complex c : p.coords()) coords.push_back(complex_json(c));
    list.push_back({{"coords", coords}, {"mult", p.mult()}});
  }
  json doc = {{"n", sols.n()}, {"solutions", list}};
  if (sols.mixed_volume()) doc["mixed_volume"] = *sols.mixed_volume();
  return doc.dump(2) + "\n";
}

PolynomialSystem parse_system(const std::string& text) {
  const json doc = parse_text(text);
  const std::size_t n = as_dim(field(doc, "n", "$"), "$.n");
  const json& polys = as_array(field(doc, "polys", "$"), "$.polys");
  if (polys.size() != n)
    fail("$.polys", "declares " + std::to_string(polys.size()) + " polynomials for n = " + std::to_string(n) +
                        " (system must be square)");
  std::vector<LaurentPoly> out;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const std::string where = "$.polys[" + std::to_string(i) + "]";
    const json& terms = as_array(polys[i], where);
    std::vector<Monomial> mons;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const std::string tw = where + "[" + std::to_string(t) + "]";
      const json& exp = as_array(field(terms[t], "exp", tw), tw + ".exp");
      if (exp.size() != n) fail(tw + ".exp", "expected " + std::to_string(n) + " exponents");
      Monomial m;
      for (std::size_t k = 0; k < exp.size(); ++k) {
        std::int64_t e = as_int(exp[k], tw + ".exp[" + std::to_string(k) + "]");
        if (std::llabs(e) > 10'000) fail(tw + ".exp", "exponent out of range");
        m.exp.push_back(static_cast<int>(e));
      }
      m.coef = as_complex(field(terms[t], "coef", tw), tw + ".coef");
      mons.push_back(std::move(m));
    }
    LaurentPoly f(n, mons);
    if (f.empty()) fail(where, "polynomial is empty");
    out.push_back(std::move(f));
  }
  return PolynomialSystem(n, std::move(out));
}

std::string format_system(const PolynomialSystem& sys) {
  json polys = json::array();
  for (const auto& f : sys.polys()) {
    json terms = json::array();
    for (const auto& t : f.terms()) terms.push_back({{"exp", t.exp}, {"coef", complex_json(t.coef)}});
    polys.push_back(terms);
  }
  return json{{"n", sys.n()}, {"polys", polys}}.dump(2) + "\n";
}

AmoebaBasis parse_basis(const std::string& text) {
  const json doc = parse_text(text);
  AmoebaBasis basis;
  basis.n = as_dim(field(doc, "n", "$"), "$.n");
  const std::int64_t l = as_int(field(doc, "l", "$"), "$.l");
  if (l < 0) fail("$.l", "must be non-negative");
  basis.l = static_cast<std::size_t>(l);
  const json& mode = field(doc, "mode", "$");
  if (!mode.is_string()) fail("$.mode", "expected a string");
  basis.mode = parse_mode(mode.get<std::string>());
  if (doc.contains("bound") && !doc["bound"].is_null()) basis.mu_bound = as_int(doc["bound"], "$.bound");

  const json& gens = as_array(field(doc, "generators", "$"), "$.generators");
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const std::string where = "$.generators[" + std::to_string(g) + "]";
    GeneratorLabel label;
    if (gens[g].contains("label")) {
      if (!gens[g]["label"].is_string()) fail(where + ".label", "expected a string");
      label = GeneratorLabel::parse(gens[g]["label"].get<std::string>());
    }
    const json& factors = as_array(field(gens[g], "factors", where), where + ".factors");
    if (factors.empty()) fail(where + ".factors", "generator has no factors");
    std::vector<AffineForm> forms;
    for (std::size_t k = 0; k < factors.size(); ++k) {
      const std::string fw = where + ".factors[" + std::to_string(k) + "]";
      Complex b0 = as_complex(field(factors[k], "b0", fw), fw + ".b0");
      const json& b = as_array(field(factors[k], "b", fw), fw + ".b");
      if (b.size() != basis.n) fail(fw + ".b", "expected " + std::to_string(basis.n) + " coefficients");
      std::vector<Complex> coeffs;
      for (std::size_t c = 0; c < b.size(); ++c) coeffs.push_back(as_complex(b[c], fw + ".b[" + std::to_string(c) + "]"));
      try {
        forms.emplace_back(b0, std::move(coeffs));
      } catch (const DomainError& e) {
        fail(fw, e.what());
      }
    }
    basis.generators.emplace_back(std::move(forms), std::move(label));
  }
  return basis;
}

std::string format_basis(const AmoebaBasis& basis) {
  json gens = json::array();
  for (const auto& g : basis.generators) {
    json factors = json::array();
    for (const auto& f : g.factors()) {
      json b = json::array();
      for (Complex c : f.b()) b.push_back(complex_json(c));
      factors.push_back({{"b0", complex_json(f.b0())}, {"b", b}});
    }
    gens.push_back({{"label", g.label().str()}, {"factors", factors}});
  }
  json doc = {{"n", basis.n}, {"l", basis.l}, {"mode", to_string(basis.mode)}, {"generators", gens}};
  doc["bound"] = basis.mu_bound ? json(*basis.mu_bound) : json(nullptr);
  return doc.dump(2) + "\n";
}

SolutionSet load_solutions(const std::filesystem::path& path) {
  return with_context(path, [&] { return parse_solutions(read_file(path)); });
}

void dump_solutions(const SolutionSet& sols, const std::filesystem::path& path) {
  write_file(path, format_solutions(sols));
}

PolynomialSystem load_system(const std::filesystem::path& path) {
  return with_context(path, [&] {
    try {
      return parse_system(read_file(path));
    } catch (const DomainError& e) {
      throw InputError(e.what());
    }
  });
}

AmoebaBasis load_basis(const std::filesystem::path& path) {
  return with_context(path, [&] { return parse_basis(read_file(path)); });
}

void dump_basis(const AmoebaBasis& basis, const std::filesystem::path& path) {
  write_file(path, format_basis(basis));
}

Image render_amoeba_2d(std::span<const ArrangementPoly> generators, const GridSpec& grid,
                       std::span<const LogPoint> marks) {
  if (generators.empty()) throw DomainError("nothing to render: empty generator list");
  if (generators.front().dim() != 2 || grid.dim() != 2) throw DomainError("rendering needs n = 2");
  // Node cap does not apply to images; only the shape checks matter.
  GridSpec g = grid;
  g.node_cap = std::numeric_limits<std::uint64_t>::max();
  g.validate();

  Image img;
  img.width = img.height = g.resolution;
  img.rgb.assign(img.width * img.height * 3, 0);
  const auto [xlo, xhi] = g.box[0];
  const auto [ylo, yhi] = g.box[1];
  const double step_x = (xhi - xlo) / static_cast<double>(g.resolution - 1);
  const double step_y = (yhi - ylo) / static_cast<double>(g.resolution - 1);

  auto shade_rows = [&](std::size_t row_begin, std::size_t row_end) {
    LogPoint u;
    u.u.assign(2, 0.0);
    for (std::size_t row = row_begin; row < row_end; ++row) {
      u.u[1] = yhi - step_y * static_cast<double>(row);
      for (std::size_t col = 0; col < img.width; ++col) {
        u.u[0] = xlo + step_x * static_cast<double>(col);
        const double m = intersection_margin(generators, u);
        std::uint8_t level;
        if (m <= g.tol) {
          level = 0;
        } else {
          double v = 1.0 - std::exp(-m / 0.75);
          // Contour bands every 0.5 log units.
          double band = std::fmod(m, 0.5);
          if (band < 0.02) v *= 0.85;
          level = static_cast<std::uint8_t>(std::lround(60.0 + 195.0 * std::clamp(v, 0.0, 1.0)));
        }
        std::uint8_t* px = &img.rgb[(row * img.width + col) * 3];
        px[0] = px[1] = px[2] = level;
      }
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(g.workers, static_cast<unsigned>(img.height)));
  if (workers == 1) {
    shade_rows(0, img.height);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w)
      threads.emplace_back(shade_rows, img.height * w / workers, img.height * (w + 1) / workers);
    for (auto& t : threads) t.join();
  }

  for (const auto& w : marks) {
    if (w.dim() != 2) continue;
    const long cx = std::lround((w[0] - xlo) / step_x);
    const long cy = std::lround((yhi - w[1]) / step_y);
    for (long d = -3; d <= 3; ++d)
      for (auto [x, y] : {std::pair{cx + d, cy}, std::pair{cx, cy + d}}) {
        if (x < 0 || y < 0 || x >= static_cast<long>(img.width) || y >= static_cast<long>(img.height)) continue;
        std::uint8_t* px = &img.rgb[(static_cast<std::size_t>(y) * img.width + static_cast<std::size_t>(x)) * 3];
        px[0] = 220;
        px[1] = 30;
        px[2] = 30;
      }
  }
  return img;
}

std::string encode_ppm(const Image& img) {
  std::string out = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(img.rgb.data()), img.rgb.size());
  return out;
}

void write_ppm(const Image& img, const std::filesystem::path& path) { write_file(path, encode_ppm(img)); }

}  // namespace amoeba::io
