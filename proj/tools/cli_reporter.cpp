#include "cli_reporter.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace toric_plt::cli {

namespace {

class Scanner {
 public:
  explicit Scanner(const std::string& text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, col_); }

  std::string word() {
    skip_ws();
    std::string w;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
      w += peek();
      advance();
    }
    if (w.empty()) fail(pos_ < text_.size() ? std::string("unexpected '") + peek() + "'" : "unexpected end of input");
    return w;
  }

  void expect(char c) {
    if (peek() != c) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "', found end of input");
      fail(std::string("expected '") + c + "', found '" + peek() + "'");
    }
    advance();
  }

  // Blanks are allowed inside vectors but not around '=' or ','.
  void skip_blanks() {
    while (peek() == ' ' || peek() == '\t') advance();
  }

  Integer integer() {
    std::string digits;
    if (peek() == '-') {
      digits += '-';
      advance();
    }
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      digits += peek();
      advance();
    }
    if (digits.empty() || digits == "-") fail("expected an integer");
    return Integer(digits);
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

struct Value {
  std::vector<Integer> ints;
  std::size_t line, column;
};

// key=value pairs up to the end of input; values are integers or a
// comma separated pair.
std::map<std::string, Value> key_values(Scanner& s, const std::set<std::string>& allowed) {
  std::map<std::string, Value> out;
  while (!s.at_end()) {
    const std::size_t line = s.line(), col = s.column();
    const std::string key = s.word();
    if (!allowed.count(key)) throw ParseError("unknown key '" + key + "'", line, col);
    if (out.count(key)) throw ParseError("key '" + key + "' given twice", line, col);
    s.expect('=');
    Value v{{s.integer()}, line, col};
    while (s.peek() == ',') {
      s.expect(',');
      v.ints.push_back(s.integer());
    }
    out.emplace(key, std::move(v));
  }
  return out;
}

Json jint(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

std::string kind_name(TerminalKind k) {
  switch (k) {
    case TerminalKind::Smooth: return "Smooth";
    case TerminalKind::CyclicQuotient: return "CyclicQuotient";
    case TerminalKind::OrdinaryDoublePoint: return "OrdinaryDoublePoint";
  }
  return "?";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path, 1, 1);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json envelope(Json input, Json result, Json checks) {
  Json doc;
  doc["input"] = std::move(input);
  doc["result"] = std::move(result);
  doc["checks"] = std::move(checks);
  doc["version"] = kVersion;
  return doc;
}

// Witness maps the generators of the germ onto those of the reference cone.
bool witness_holds(const ConeGerm& germ, const TerminalToricType& t) {
  const auto gens = germ.generators();
  const auto ref = reference_cone(t).generators();
  if (gens.size() != ref.size()) return false;
  std::set<std::vector<Integer>> mapped, want;
  for (const auto& g : gens) {
    const LatticeVector v = t.witness * g;
    mapped.insert(std::vector<Integer>(v.data(), v.data() + v.size()));
  }
  for (const auto& g : ref) want.insert(std::vector<Integer>(g.data(), g.data() + g.size()));
  return mapped == want;
}

std::optional<SmoothBlowup> blowup_of(const FamilySpec& s) {
  switch (s.kind) {
    case FamilyKind::A: return SmoothBlowup::type_a(s.k, s.a2, s.a3, s.d1);
    case FamilyKind::DEven:
    case FamilyKind::DOdd: return SmoothBlowup::type_d(s.n());
    case FamilyKind::E6: return SmoothBlowup::type_e(6);
    case FamilyKind::E7: return SmoothBlowup::type_e(7);
    case FamilyKind::E8: return SmoothBlowup::type_e(8);
    case FamilyKind::Odp: return std::nullopt;
  }
  return std::nullopt;
}

std::string coefficient_text(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_den() == 1 ? c.get_num().get_str() : toric_plt::to_string(c);
}

}  // namespace

ConeGerm parse_germ(const std::string& text) {
  Scanner s(text);
  if (s.at_end()) s.fail("empty germ description");
  const std::size_t line = s.line(), col = s.column();
  const std::string kind = s.word();
  if (kind == "odp") {
    if (!s.at_end()) s.fail("unexpected text after 'odp'");
    return ConeGerm::reference_odp();
  }
  if (kind == "cyclic") {
    auto kv = key_values(s, {"r", "q"});
    for (const char* key : {"r", "q"}) {
      if (!kv.count(key)) throw ParseError(std::string("missing key '") + key + "'", line, col);
      if (kv.at(key).ints.size() != 1)
        throw ParseError(std::string("'") + key + "' takes one integer", kv.at(key).line, kv.at(key).column);
    }
    const Integer r = kv.at("r").ints[0], q = kv.at("q").ints[0];
    if (r < 1) throw DomainError("cyclic quotient needs r >= 1");
    LatticeVector e3(3);
    e3 << 1, q, r;
    return ConeGerm::simplicial(lattice_vector({1, 0, 0}), lattice_vector({0, 1, 0}), e3);
  }
  if (kind == "cone") {
    std::vector<LatticeVector> gens;
    while (!s.at_end()) {
      s.expect('(');
      LatticeVector v(3);
      for (int i = 0; i < 3; ++i) {
        s.skip_blanks();
        v(i) = s.integer();
        s.skip_blanks();
        if (i < 2) s.expect(',');
      }
      s.expect(')');
      gens.push_back(v);
    }
    if (gens.size() != 3 && gens.size() != 4)
      throw ParseError("a cone needs 3 or 4 generators, found " + std::to_string(gens.size()), line, col);
    return ConeGerm::from_generators(gens);
  }
  throw ParseError("unknown germ kind '" + kind + "' (expected cyclic, cone or odp)", line, col);
}

FamilySpec parse_family(const std::string& text) {
  Scanner s(text);
  if (s.at_end()) s.fail("empty family description");
  const std::size_t line = s.line(), col = s.column();
  const std::string kind = s.word();

  std::set<std::string> required, optional;
  if (kind == "A") {
    required = {"k", "a2", "a3", "d1", "alpha"};
    optional = {"r"};
  } else if (kind == "D") {
    required = {"alpha"};
    optional = {"k", "n"};
  } else if (kind == "E6" || kind == "E7" || kind == "E8") {
    required = {"alpha"};
  } else if (kind == "ODP") {
    required = {"a1", "k", "d13", "d14", "a3", "a4", "alpha"};
  } else {
    throw ParseError("unknown family kind '" + kind + "' (expected A, D, E6, E7, E8 or ODP)", line, col);
  }
  std::set<std::string> allowed = required;
  allowed.insert(optional.begin(), optional.end());
  const auto kv = key_values(s, allowed);
  for (const auto& key : required)
    if (!kv.count(key)) throw ParseError("missing key '" + key + "'", line, col);
  for (const auto& [key, v] : kv) {
    const std::size_t want = key == "alpha" ? 2 : 1;
    if (v.ints.size() != want)
      throw ParseError("'" + key + "' takes " + (want == 2 ? "two integers" : "one integer"), v.line, v.column);
  }
  const auto get = [&](const std::string& key) { return kv.at(key).ints[0]; };
  const Integer al1 = kv.at("alpha").ints[0], al2 = kv.at("alpha").ints[1];

  if (kind == "A") {
    auto spec = FamilySpec::type_a(get("k"), get("a2"), get("a3"), get("d1"), al1, al2);
    if (kv.count("r")) spec = spec.over_quotient(get("r"));
    return spec;
  }
  if (kind == "D") {
    if (kv.count("k") == kv.count("n")) throw ParseError("D takes exactly one of k or n", line, col);
    if (kv.count("k")) return FamilySpec::type_d_even(get("k"), al1, al2);
    const Integer n = get("n");
    if (n < 4) throw DomainError("constraint n >= 4 for D_n violated");
    if (mod(n, 2) == 0) return FamilySpec::type_d_even((n - 2) / 2, al1, al2);
    return FamilySpec::type_d_odd((n - 1) / 2, al1, al2);
  }
  if (kind == "ODP")
    return FamilySpec::type_odp(get("a1"), get("k"), get("d13"), get("d14"), get("a3"), get("a4"), al1, al2);
  return FamilySpec::type_e(kind[1] - '0', al1, al2);
}

Json to_json(const Rational& q) { return toric_plt::to_string(q); }

Json to_json(const LatticeMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(jint(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const CyclicQuotientType& t) {
  Json j;
  j["text"] = t.to_string();
  j["order"] = jint(t.order());
  Json w = Json::array();
  for (const auto& x : t.weights()) w.push_back(jint(x));
  j["weights"] = std::move(w);
  return j;
}

Json to_json(const TerminalToricType& t) {
  Json j;
  j["type"] = t.to_string();
  j["kind"] = kind_name(t.kind);
  if (t.kind == TerminalKind::CyclicQuotient) {
    j["r"] = jint(t.r);
    j["q"] = jint(t.q);
  }
  j["witness"] = to_json(t.witness);
  return j;
}

Json to_json(const FamilySpec& s) {
  Json j;
  j["kind"] = to_string(s.kind);
  j["name"] = s.name();
  Json p;
  switch (s.kind) {
    case FamilyKind::A:
      p["k"] = jint(s.k);
      p["a2"] = jint(s.a2);
      p["a3"] = jint(s.a3);
      p["d1"] = jint(s.d1);
      break;
    case FamilyKind::DEven:
    case FamilyKind::DOdd:
      p["k"] = jint(s.k);
      p["n"] = jint(s.n());
      break;
    case FamilyKind::Odp:
      p["a1"] = jint(s.a1);
      p["k"] = jint(s.k);
      p["d13"] = jint(s.d13);
      p["d14"] = jint(s.d14);
      p["a3"] = jint(s.a3);
      p["a4"] = jint(s.a4);
      break;
    default: break;
  }
  p["alpha"] = Json::array({jint(s.alpha1), jint(s.alpha2)});
  j["params"] = std::move(p);
  Json w = Json::array();
  for (const auto& x : s.weights()) w.push_back(jint(x));
  j["weights"] = std::move(w);
  j["ambient"] = to_json(s.ambient);
  return j;
}

Json to_json(const ConicBundleDescription& d) {
  Json j;
  Json fibers = Json::array();
  for (const auto& f : d.fibers) {
    Json x;
    x["id"] = f.id;
    x["on_section"] = to_json(f.on_section);
    x["other"] = to_json(f.other);
    x["k"] = jint(f.k);
    x["coefficient"] = to_json(f.coefficient);
    fibers.push_back(std::move(x));
  }
  j["fibers"] = std::move(fibers);
  j["section_self_intersection"] = to_json(d.section_self_intersection);
  j["section_on_cover"] = d.section_on_cover;
  j["transversal"] = to_json(d.transversal);
  j["e0_coefficient"] = to_json(d.e0_coefficient);
  j["toric_log_surface"] = d.toric_log_surface;
  return j;
}

Json to_json(const CheckResult& c) {
  Json j;
  j["name"] = c.name;
  j["passed"] = c.passed;
  j["instances"] = c.instances;
  if (!c.passed) j["counterexample"] = c.counterexample;
  return j;
}

Report classify_report(const std::string& file, const std::string& text) {
  const ConeGerm germ = parse_germ(text);
  Json input;
  input["command"] = "classify";
  input["file"] = file;
  input["text"] = text;
  Json result, checks = Json::array();
  try {
    const TerminalToricType t = classify_germ(germ);
    result = to_json(t);
    result["terminal"] = true;
    Json c;
    c["name"] = "witness";
    c["passed"] = witness_holds(germ, t);
    checks.push_back(std::move(c));
    const bool ok = checks.back()["passed"].get<bool>();
    return {envelope(std::move(input), std::move(result), std::move(checks)), ok ? kOk : kDomainError};
  } catch (const NotTerminalError& e) {
    result["terminal"] = false;
    result["quotient"] = to_json(e.quotient());
    result["reason"] = to_string(e.verdict().reason);
    if (e.verdict().witness) result["group_element"] = jint(*e.verdict().witness);
    return {envelope(std::move(input), std::move(result), std::move(checks)), kDomainError};
  }
}

Report family_report(const std::string& file, const std::string& text) {
  const FamilySpec spec = parse_family(text);
  Json input;
  input["command"] = "family";
  input["file"] = file;
  input["text"] = text;

  const ConicBundleDescription d = build_family(spec);
  Json result;
  result["family"] = to_json(spec);
  result["description"] = to_json(d);
  Json diff = Json::array();
  for (const auto& c : diff_e(spec)) {
    Json x;
    x["curve"] = c.curve;
    x["coefficient"] = to_json(c.coefficient);
    diff.push_back(std::move(x));
  }
  result["diff_e"] = std::move(diff);
  result["diff_e_is_toric"] = diff_e_is_toric(spec);

  Json surface;
  const auto w = spec.weights();
  if (const auto f = blowup_of(spec)) {
    const auto s = surface_from_smooth_weights({w[0], w[1], w[2]});
    surface["text"] = s.to_string();
    surface["gamma_degree"] = jint(f->gamma().degree);
    surface["log_degree_with_gamma"] = to_json(log_degree(s, f->gamma()));
    const auto phi = family_equation(*f);
    const auto verdict = classify_support(phi, f->weights());
    Json duval;
    duval["equation"] = phi.to_string();
    duval["type"] = verdict.type ? verdict.type->to_string() : to_string(verdict.failure);
    result["duval"] = std::move(duval);
  } else {
    const auto s = odp_surface_from_weights({w[0], w[1], w[2], w[3]});
    surface["text"] = s.to_string();
    surface["gamma_degree"] = jint(w[1]);
    surface["log_degree_with_gamma"] = to_json(log_degree(s, DivisorClass{w[1]}));
  }
  result["surface"] = std::move(surface);

  Json checks = Json::array();
  const ChartReport rep = verify_fiber_charts(spec);
  Json charts;
  charts["name"] = "fiber_charts";
  charts["passed"] = rep.ok;
  charts["instances"] = rep.charts_checked;
  Json mism = Json::array();
  for (const auto& m : rep.mismatches) {
    Json x;
    x["where"] = m.where;
    x["claimed"] = m.claimed;
    x["computed"] = m.computed;
    mism.push_back(std::move(x));
  }
  charts["mismatches"] = std::move(mism);
  if (!rep.vertex_basis_dets.empty()) {
    Json dets = Json::array();
    for (const auto& x : rep.vertex_basis_dets) dets.push_back(jint(x));
    charts["vertex_basis_dets"] = std::move(dets);
  }
  checks.push_back(std::move(charts));
  Json klt;
  klt["name"] = "klt";
  klt["passed"] = klt_check(d);
  checks.push_back(std::move(klt));
  Json neg;
  neg["name"] = "section_negative";
  neg["passed"] = d.section_self_intersection < 0;
  checks.push_back(std::move(neg));

  bool ok = true;
  for (const auto& c : checks) ok = ok && c["passed"].get<bool>();
  return {envelope(std::move(input), std::move(result), std::move(checks)), ok ? kOk : kDomainError};
}

Report verify_report(VerifyScope scope, const VerifyBounds& bounds) {
  Json input;
  input["command"] = "verify";
  input["scope"] = to_string(scope);
  input["r_max"] = bounds.r_max;
  input["param_max"] = bounds.param_max;
  input["seed"] = bounds.seed;
  const auto results = run_checks(scope, bounds);
  Json checks = Json::array();
  bool ok = true;
  std::size_t total = 0;
  for (const auto& c : results) {
    checks.push_back(to_json(c));
    ok = ok && c.passed;
    total += c.instances;
  }
  Json result;
  result["passed"] = ok;
  result["instances"] = total;
  return {envelope(std::move(input), std::move(result), std::move(checks)), ok ? kOk : kDomainError};
}

std::string summary(const Json& doc) {
  std::ostringstream os;
  const std::string cmd = doc["input"]["command"].get<std::string>();
  const Json& r = doc["result"];
  if (cmd == "classify") {
    if (r["terminal"].get<bool>()) {
      os << r["type"].get<std::string>() << "\n";
      os << "witness " << r["witness"].dump() << "\n";
    } else {
      os << "not terminal: " << r["quotient"]["text"].get<std::string>() << " ("
         << r["reason"].get<std::string>();
      if (r.contains("group_element")) os << " at j=" << r["group_element"].dump();
      os << ")\n";
    }
  } else if (cmd == "family") {
    os << r["family"]["name"].get<std::string>() << "\n";
    os << "S = " << r["surface"]["text"].get<std::string>() << "\n";
    for (const auto& f : r["description"]["fibers"])
      os << f["id"].get<std::string>() << ": " << f["on_section"]["text"].get<std::string>() << " on section, "
         << f["other"]["text"].get<std::string>() << " opposite, k=" << f["k"].dump() << "\n";
    os << "Diff_E(0) =";
    bool any = false;
    for (const auto& c : r["diff_e"]) {
      const std::string coef = c["coefficient"].get<std::string>();
      if (coef == "0/1") continue;
      os << (any ? " + " : " ") << coefficient_text(Rational(coef)) << " " << c["curve"].get<std::string>();
      any = true;
    }
    os << (any ? "" : " 0") << "\n";
    os << "section^2 = " << coefficient_text(Rational(r["description"]["section_self_intersection"].get<std::string>()))
       << "\n";
  } else {
    os << "verify " << doc["input"]["scope"].get<std::string>() << "\n";
  }
  for (const auto& c : doc["checks"]) {
    os << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>();
    if (c.contains("instances")) os << " (" << c["instances"].dump() << ")";
    if (c.contains("counterexample")) os << ": " << c["counterexample"].get<std::string>();
    os << "\n";
  }
  return os.str();
}

std::string serialize(const Json& doc) { return doc.dump(2) + "\n"; }

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toric plt blow-ups of terminal threefold germs"};
  app.require_subcommand(1);
  std::string file, json_out, scope_text;
  VerifyBounds bounds;

  auto* classify = app.add_subcommand("classify", "Classify a terminal toric germ");
  classify->add_option("file", file, "Germ description")->required();
  classify->add_option("--json", json_out, "Write the JSON report here ('-' for stdout)");

  auto* family = app.add_subcommand("family", "Describe a non-toric plt blow-up family");
  family->add_option("file", file, "Family description")->required();
  family->add_option("--json", json_out, "Write the JSON report here ('-' for stdout)");

  auto* verify = app.add_subcommand("verify", "Run the verification sweeps");
  verify->add_option("--scope", scope_text, "formulas, charts, duval, terminality or all")
      ->required()
      ->check(CLI::IsMember({"formulas", "charts", "duval", "terminality", "all"}));
  verify->add_option("--r-max", bounds.r_max, "Largest quotient order")->check(CLI::PositiveNumber);
  verify->add_option("--param-max", bounds.param_max, "Largest family parameter")->check(CLI::PositiveNumber);
  verify->add_option("--json", json_out, "Write the JSON report here ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }

  if (const char* seed = std::getenv("TORIC_PLT_SEED")) {
    try {
      std::size_t used = 0;
      bounds.seed = std::stoull(seed, &used);
      if (used != std::string(seed).size()) throw std::invalid_argument(seed);
    } catch (const std::exception&) {
      err << "error: TORIC_PLT_SEED must be a nonnegative integer\n";
      return kParseError;
    }
  }

  Report report;
  try {
    if (*classify) {
      report = classify_report(file, read_file(file));
    } else if (*family) {
      report = family_report(file, read_file(file));
    } else {
      report = verify_report(*parse_scope(scope_text), bounds);
    }
  } catch (const ParseError& e) {
    err << file << ":" << e.line() << ":" << e.column() << ": error: "
        << std::string(e.what()).substr(std::string(e.what()).find(": ") + 2) << "\n";
    return kParseError;
  } catch (const NotTerminalError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }

  if (json_out == "-") {
    out << serialize(report.doc);
  } else {
    out << summary(report.doc);
    if (!json_out.empty()) {
      std::ofstream f(json_out, std::ios::binary);
      if (!f) {
        err << "error: cannot write " << json_out << "\n";
        return kDomainError;
      }
      f << serialize(report.doc);
    }
  }
  return report.exit_code;
}

}  // namespace toric_plt::cli
