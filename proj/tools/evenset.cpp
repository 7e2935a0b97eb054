// Command-line driver: Groebner-basis utilities, the nodal-surface
// verification pipeline, and the closed-form invariant calculators.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "evenset/groebner.hpp"
#include "evenset/invariants.hpp"
#include "evenset/polyring.hpp"
#include "evenset/surfgeom.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;
using namespace evenset;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct IdealFile {
  RingPtr ring;
  Ideal ideal;
};

IdealFile read_ideal_file(const std::string& path, bool compat) {
  std::istringstream in(read_file(path));
  std::string line;
  RingPtr ring;
  std::vector<Polynomial> gens;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::string body = line.substr(first);
    while (!body.empty() && (body.back() == '\r' || body.back() == ' ')) body.pop_back();
    try {
      if (!ring) {
        ring = Ring::parse_header(body);
      } else {
        gens.push_back(Polynomial::parse(body, ring, compat));
      }
    } catch (const Error& e) {
      throw Error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!ring) throw Error(path + ": missing ring header");
  return IdealFile{ring, Ideal::make(ring, std::move(gens))};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json chart_json(const ChartReport& c) {
  return json{{"chart", c.chart}, {"nodal_ok", c.nodal_ok}, {"degree_reached", c.gb_degree_reached}};
}

json report_json(const VerificationReport& r) {
  json charts = json::array();
  for (const auto& c : r.charts) charts.push_back(chart_json(c));
  json segre{{"codim", r.segre.codimension}, {"degree", r.segre.degree}};
  json lambda = json::array();
  for (auto l : r.lambda) lambda.push_back(l);
  return json{{"charts", charts},   {"segre", segre},       {"expected_nodes", r.expected_nodes},
              {"even_set", r.even_set}, {"passed", r.passed}, {"lambda", lambda},
              {"attempts", r.attempts}};
}

json record_json(const InvariantRecord& r) {
  return json{{"g", r.g},           {"family", std::string(1, r.family)},
              {"pg", r.pg},         {"q", r.q},
              {"K2", r.k2},         {"nu", r.nu},
              {"a", r.a},           {"b", r.b},
              {"c", r.c},           {"consistent", r.consistent}};
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',') {
      if (cur.empty()) throw Error("bad integer list: " + s);
      out.push_back(std::stoll(cur));
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  return out;
}

int cmd_gb(const std::string& path, bool compat, bool as_json) {
  auto file = read_ideal_file(path, compat);
  Ideal I = buchberger(file.ideal);
  if (as_json) {
    json basis = json::array();
    for (const auto& g : I.gb->elements) basis.push_back(g.str());
    emit(json{{"ring", I.ring->header()},
              {"basis", basis},
              {"degree_reached", I.gb->degree_reached}});
  } else {
    std::cout << I.ring->header() << "\n";
    for (const auto& g : I.gb->elements) std::cout << g.str() << "\n";
  }
  return 0;
}

int cmd_member(const std::string& path, const std::string& poly, bool compat, bool as_json) {
  auto file = read_ideal_file(path, compat);
  Polynomial f = Polynomial::parse(poly, file.ring, compat);
  bool member = ideal_member(f, with_groebner(file.ideal));
  if (as_json)
    emit(json{{"member", member}});
  else
    std::cout << (member ? "true" : "false") << "\n";
  return member ? 0 : 1;
}

int cmd_radical(const std::string& path, const std::string& poly, std::uint32_t power, bool compat,
                bool as_json) {
  auto file = read_ideal_file(path, compat);
  Polynomial f = Polynomial::parse(poly, file.ring, compat);
  Ideal I = with_groebner(file.ideal);
  bool inside = false;
  std::optional<std::uint32_t> witness;
  if (power > 0) {
    Polynomial pw = Polynomial::one(file.ring);
    for (std::uint32_t k = 1; k <= power && !witness; ++k) {
      pw = pw * f;
      if (I.gb->elements.empty() ? pw.is_zero() : normal_form(pw, I.gb->elements).is_zero())
        witness = k;
    }
    inside = witness.has_value();
  } else {
    inside = radical_member(f, I);
  }
  if (as_json) {
    json j{{"radical_member", inside}};
    j["power"] = witness ? json(*witness) : json(nullptr);
    emit(j);
  } else if (witness) {
    std::cout << "true (power " << *witness << ")\n";
  } else {
    std::cout << (inside ? "true" : "false") << "\n";
  }
  return inside ? 0 : 1;
}

int cmd_eliminate(const std::string& path, const std::string& vars, bool compat, bool as_json) {
  auto file = read_ideal_file(path, compat);
  std::vector<std::size_t> idx;
  std::string cur;
  for (char ch : vars + ",") {
    if (ch == ',') {
      if (cur.empty()) throw Error("bad variable list");
      auto v = file.ring->find_var(cur);
      if (!v) throw Error("unknown variable " + cur);
      idx.push_back(*v);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  Ideal E = eliminate(file.ideal, idx);
  if (as_json) {
    json gens = json::array();
    for (const auto& g : E.generators) gens.push_back(g.str());
    emit(json{{"ring", E.ring->header()}, {"generators", gens}});
  } else {
    std::cout << E.ring->header() << "\n";
    for (const auto& g : E.generators) std::cout << g.str() << "\n";
  }
  return 0;
}

int cmd_hilbert(const std::string& path, bool compat, bool as_json) {
  auto file = read_ideal_file(path, compat);
  HilbertProfile prof = hilbert_profile(file.ideal);
  if (as_json)
    emit(json{{"codimension", prof.codimension}, {"degree", prof.degree}});
  else
    std::cout << "codimension: " << prof.codimension << "\ndegree: " << prof.degree << "\n";
  return 0;
}

int cmd_build_sigma(const std::string& path, bool as_json) {
  SurfaceData data = parse_surface_file(read_file(path));
  std::vector<std::uint32_t> lambda = data.lambda.value_or(std::vector<std::uint32_t>{1, 1, 1, 1});
  SurfaceSpec spec = build_sigma(data.points, data.conics, lambda, data.ring);
  if (as_json)
    emit(json{{"ring", spec.ring->header()}, {"h", spec.h.str()}});
  else {
    std::cout << spec.ring->header() << "\n" << spec.h.str() << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& path, const VerifyOptions& opts, bool as_json) {
  SurfaceData data = parse_surface_file(read_file(path));
  VerificationReport report = verify_surface(data, opts);
  if (as_json) {
    emit(report_json(report));
  } else {
    for (const auto& c : report.charts)
      std::cout << "chart (" << c.chart << "): " << (c.nodal_ok ? "nodal" : "NOT nodal")
                << " (basis degree " << c.gb_degree_reached << "; " << c.certificate << ")\n";
    std::cout << "segre singular locus: codimension " << report.segre.codimension << ", degree "
              << report.segre.degree << "\n";
    std::cout << "expected nodes: " << report.expected_nodes << "\n";
    std::cout << "even set: " << (report.even_set ? "yes" : "no") << "\n";
    std::cout << "lambda:";
    for (auto l : report.lambda) std::cout << " " << l;
    std::cout << " (attempt " << report.attempts << ")\n";
    std::cout << (report.passed ? "PASSED" : "FAILED") << "\n";
  }
  return report.passed ? 0 : 1;
}

int cmd_enumerate(std::int64_t gmax, bool as_json) {
  auto recs = enumerate_type2(gmax);
  if (as_json) {
    json arr = json::array();
    for (const auto& r : recs) arr.push_back(record_json(r));
    emit(arr);
  } else {
    std::printf("%4s %6s %4s %4s %4s %4s %4s %5s %5s %s\n", "g", "family", "pg", "q", "a", "b",
                "c", "K2", "nu", "ok");
    for (const auto& r : recs)
      std::printf("%4lld %6c %4lld %4lld %4lld %4lld %4lld %5lld %5lld %s\n",
                  static_cast<long long>(r.g), r.family, static_cast<long long>(r.pg),
                  static_cast<long long>(r.q), static_cast<long long>(r.a),
                  static_cast<long long>(r.b), static_cast<long long>(r.c),
                  static_cast<long long>(r.k2), static_cast<long long>(r.nu),
                  r.consistent ? "yes" : "no");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Groebner-basis toolkit for nodal surfaces in P^2 x P^1 bundles"};
  app.require_subcommand(1);

  bool compat = false;
  bool as_json = false;
  app.add_flag("--compat", compat, "accept transcript-style polynomial spelling (x[0]2)");
  app.add_flag("--json", as_json, "machine-readable JSON output");

  std::string path, poly, vars;
  std::uint32_t power = 0;

  auto* gb = app.add_subcommand("gb", "reduced Groebner basis of an ideal file");
  gb->add_option("file", path)->required();

  auto* member = app.add_subcommand("member", "ideal membership test");
  member->add_option("file", path)->required();
  member->add_option("--poly", poly, "polynomial to test")->required();

  auto* radical = app.add_subcommand("radical", "radical membership test");
  radical->add_option("file", path)->required();
  radical->add_option("--poly", poly, "polynomial to test")->required();
  radical->add_option("--power", power, "test the literal powers f^1..f^N instead");

  auto* elim = app.add_subcommand("eliminate", "eliminate variables from an ideal");
  elim->add_option("file", path)->required();
  elim->add_option("--vars", vars, "comma-separated variables to eliminate")->required();

  auto* hilbert = app.add_subcommand("hilbert", "codimension and degree of a homogeneous ideal");
  hilbert->add_option("file", path)->required();

  auto* build = app.add_subcommand("build-sigma", "derive the surface equation from fibre data");
  build->add_option("file", path)->required();

  auto* verify = app.add_subcommand("verify", "run the full nodal verification pipeline");
  verify->add_option("file", path)->required();
  VerifyOptions vopts;
  std::uint32_t vpower = 0;
  verify->add_option("--power", vpower, "certify charts by reducing powers of the homogenizer");
  verify->add_flag("--affine-check", vopts.affine_cross_check,
                   "cross-check each chart with the affine 3x3 Hessian route");
  verify->add_option("--jobs", vopts.jobs, "number of concurrent chart verifications")
      ->check(CLI::Range(1u, 6u));
  verify->add_option("--seed", vopts.seed, "seed for the weight retry policy");
  verify->add_option("--retries", vopts.retries, "extra weight choices after (1,1,1,1)");

  auto* inv = app.add_subcommand("invariants", "closed-form invariant calculators");
  bool want_nodes = false;
  std::int64_t pg = 0, q = 0;
  std::string castel, cover, budget, chow_type, chow_classes;
  inv->add_flag("--node-count", want_nodes, "4*(1+pg+q)");
  inv->add_option("--pg", pg);
  inv->add_option("--q", q);
  inv->add_option("--castelnuovo", castel, "a,b,c");
  inv->add_option("--double-cover", cover, "pg,q,K2,nu of the nodal surface");
  inv->add_option("--c2-budget", budget, "g,pg");
  inv->add_option("--chow-type", chow_type, "a,b,c of the bundle");
  inv->add_option("--chow-classes", chow_classes, "m1,n1;m2,n2;m3,n3");

  auto* enum2 = app.add_subcommand("enumerate-type2", "numerical possibilities per base genus");
  std::int64_t gmax = 26;
  enum2->add_option("--gmax", gmax, "largest base genus to consider");

  // global flags (--json, --compat) may trail the subcommand
  for (auto* sc : app.get_subcommands([](CLI::App*) { return true; })) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (gb->parsed()) return cmd_gb(path, compat, as_json);
    if (member->parsed()) return cmd_member(path, poly, compat, as_json);
    if (radical->parsed()) return cmd_radical(path, poly, power, compat, as_json);
    if (elim->parsed()) return cmd_eliminate(path, vars, compat, as_json);
    if (hilbert->parsed()) return cmd_hilbert(path, compat, as_json);
    if (build->parsed()) return cmd_build_sigma(path, as_json);
    if (verify->parsed()) {
      if (vpower > 0) vopts.power = vpower;
      return cmd_verify(path, vopts, as_json);
    }
    if (inv->parsed()) {
      if (want_nodes) {
        std::int64_t nu = node_count(pg, q);
        if (as_json)
          emit(json{{"pg", pg}, {"q", q}, {"nu", nu}});
        else
          std::cout << nu << "\n";
        return 0;
      }
      if (!castel.empty()) {
        auto v = parse_int_list(castel);
        if (v.size() != 3) throw Error("--castelnuovo needs a,b,c");
        auto r = castelnuovo_numbers(v[0], v[1], v[2]);
        if (as_json)
          emit(record_json(r));
        else
          std::cout << "pg=" << r.pg << " q=" << r.q << " K2=" << r.k2 << "\n";
        return 0;
      }
      if (!cover.empty()) {
        auto v = parse_int_list(cover);
        if (v.size() != 4) throw Error("--double-cover needs pg,q,K2,nu");
        auto r = double_cover_invariants(v[0], v[1], v[2], v[3]);
        if (as_json)
          emit(json{{"chi", r.chi}, {"K2", r.k2}});
        else
          std::cout << "chi=" << r.chi << " K2=" << r.k2 << "\n";
        return 0;
      }
      if (!budget.empty()) {
        auto v = parse_int_list(budget);
        if (v.size() != 2) throw Error("--c2-budget needs g,pg");
        auto r = c2_budget(v[0], v[1]);
        if (as_json)
          emit(json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"ok", r.ok}});
        else
          std::cout << "lhs=" << r.lhs << " rhs=" << r.rhs << " ok=" << (r.ok ? "true" : "false")
                    << "\n";
        return 0;
      }
      if (!chow_type.empty() || !chow_classes.empty()) {
        auto t = parse_int_list(chow_type);
        if (t.size() != 3) throw Error("--chow-type needs a,b,c");
        BundleData d{t[0], t[1], t[2]};
        std::vector<BundleClass> cls;
        std::string cur;
        for (char ch : chow_classes + ";") {
          if (ch == ';') {
            auto v = parse_int_list(cur);
            if (v.size() != 2) throw Error("--chow-classes needs m,n;m,n;m,n");
            cls.push_back(BundleClass{v[0], v[1], d});
            cur.clear();
          } else {
            cur += ch;
          }
        }
        if (cls.size() != 3) throw Error("--chow-classes needs three classes");
        std::int64_t r = chow_intersect(cls[0], cls[1], cls[2]);
        if (as_json)
          emit(json{{"intersection", r}});
        else
          std::cout << r << "\n";
        return 0;
      }
      throw Error("invariants: choose one of --node-count/--castelnuovo/--double-cover/"
                  "--c2-budget/--chow-type");
    }
    if (enum2->parsed()) return cmd_enumerate(gmax, as_json);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
