#include "cantor/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"

#include "cantor/enumerate.hpp"
#include "cantor/equiv.hpp"
#include "cantor/errors.hpp"
#include "cantor/io.hpp"

namespace cantor::cli {

using io::Json;

namespace {

std::vector<int> int_csv(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad integer \"" + item + "\"");
    }
  }
  return out;
}

Json json_arg(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw InputError("cannot read " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON argument: ") + e.what());
  }
}

Json bounds_json(const Membership& m) {
  Json b = Json::array();
  for (const auto& p : m.bounds) b.push_back({{"power", p.power}, {"m", p.m}, {"m_prime", p.m_prime}, {"ok", p.ok}});
  return b;
}

Json signs_json(const SignVector& s) { return s.signs; }

Json factor_json(const std::map<std::uint64_t, std::uint64_t>& f) {
  Json j = Json::object();
  for (auto [p, e] : f) j[std::to_string(p)] = e;
  return j;
}

struct Opts {
  std::string system = "odometer:2";
  std::string x0;
  bool json = false;
  std::size_t towers_level = 3;
  std::size_t max_level = 8;
  std::size_t depth = 8;
  std::size_t horizon = kDefaultOrbitCap;
  bool dump_towers = false;
  std::string element, perm, clopen, a, b;
  std::optional<std::size_t> level;
  std::size_t target = 0;
  std::vector<std::string> files;
  std::uint64_t count = 10, start = 0, budget = kDefaultCodeBudget;
  bool dedup = false;
};

class Runner {
 public:
  explicit Runner(const Opts& o) : o_(o) {}

  CommandResult finish(const std::string& verdict, int code, const Json& payload, const std::string& text) {
    CommandResult r;
    r.verdict = verdict;
    r.exit_code = code;
    if (o_.json) r.out = Json{{"verdict", verdict}, {"payload", payload}}.dump(2) + "\n";
    else r.out = "verdict: " + verdict + "\n" + text;
    return r;
  }

  System system() const { return load_system_arg(o_.system); }

  Point base_point(const System& sys) const {
    if (!o_.x0.empty()) return parse_point(sys.space(), o_.x0);
    if (sys.is_odometer()) return Point(sys.space(), {}, {0});
    return sys.min_point();
  }

  CommandResult system_info() {
    const System sys = system();
    const auto rep = minimality_evidence(sys, o_.horizon);
    Json p{{"system", io::system_to_json(sys)},
           {"describe", sys.describe()},
           {"properly_ordered", sys.properly_ordered()},
           {"minimality", to_string(rep.verdict)},
           {"power", rep.power},
           {"detail", rep.detail}};
    if (sys.properly_ordered()) {
      p["max_point"] = to_literal(sys.max_point());
      p["min_point"] = to_literal(sys.min_point());
    }
    std::ostringstream t;
    t << "system: " << sys.describe() << "\nproperly ordered: " << (sys.properly_ordered() ? "yes" : "no")
      << "\nminimality: " << to_string(rep.verdict) << " (" << rep.detail << ")\n";
    const bool ok = rep.verdict != MinimalityVerdict::failed;
    return finish(to_string(rep.verdict), ok ? kOk : kNegative, p, t.str());
  }

  CommandResult towers() {
    const System sys = system();
    KRSequence seq(sys, base_point(sys));
    Json levels = Json::array(), maps = Json::array(), depths = Json::array(), pictures = Json::array();
    std::ostringstream t;
    seq.level(o_.towers_level);
    if (o_.towers_level > 0) seq.stacking(o_.towers_level - 1);
    for (std::size_t n = 0; n <= o_.towers_level; ++n) {
      const auto& xi = seq.level(n);
      levels.push_back(io::partition_to_json(xi));
      depths.push_back(seq.base_depth(n));
      if (n < o_.towers_level) maps.push_back(io::stacking_to_json(seq.stacking(n)));
      t << "level " << n << ": " << xi.towers.size() << " tower(s), heights";
      for (const auto& tw : xi.towers) t << " " << tw.height();
      t << ", base depth " << seq.base_depth(n) << "\n";
      if (o_.dump_towers) {
        const auto pic = render_towers(seq, n);
        pictures.push_back(pic);
        t << pic;
      }
    }
    Json p{{"system", io::system_to_json(sys)},
           {"x0", to_literal(seq.base_point())},
           {"levels", levels},
           {"stacking", maps},
           {"base_depths", depths}};
    if (o_.dump_towers) p["renderings"] = pictures;
    return finish("Towers", kOk, p, t.str());
  }

  CommandResult validate() {
    const System sys = system();
    try {
      const auto f = io::element_from_json(sys, json_arg(o_.element));
      return finish("Valid", kOk, {{"element", io::element_to_json(f)}},
                    "element: " + io::element_to_json(f).dump() + "\n");
    } catch (const InvalidElement& e) {
      const auto w = to_literal(e.witness());
      return finish("Invalid", kNegative, {{"reason", e.what()}, {"witness", w}},
                    std::string("reason: ") + e.what() + "\nwitness: " + w + "\n");
    }
  }

  CommandResult member() {
    const System sys = system();
    const Point x0 = base_point(sys);
    const auto f = io::element_from_json(sys, json_arg(o_.element));
    const auto m = membership_gamma(sys, x0, f, o_.horizon);
    Json p{{"x0", to_literal(x0)}, {"bounds", bounds_json(m)}, {"reason", m.reason}};
    std::ostringstream t;
    for (const auto& b : m.bounds)
      t << "piece power " << b.power << ": m = " << b.m << ", m' = " << b.m_prime << (b.ok ? " ok" : " violated")
        << "\n";
    if (m.violating) {
      p["violating"] = *m.violating;
      t << "violating piece: " << *m.violating << "\n";
    }
    if (m.witness) {
      p["witness"] = to_literal(*m.witness);
      t << "witness: " << to_literal(*m.witness) << "\n";
    }
    return finish(m.yes ? "Yes" : "No", m.yes ? kOk : kNegative, p, t.str());
  }

  TowerPermutation perm_input(const KRSequence& seq) const {
    if (!o_.perm.empty()) {
      auto tp = io::perm_from_json(json_arg(o_.perm));
      check_shape(tp, seq.level(tp.level));
      return tp;
    }
    if (o_.element.empty()) throw InputError("give --perm or --element with --level");
    if (!o_.level) throw InputError("--element needs --level");
    const auto f = io::element_from_json(seq.system(), json_arg(o_.element));
    auto tp = as_tower_permutation(seq, f, *o_.level);
    if (!tp) throw InputError("element does not lie in Gamma_" + std::to_string(*o_.level));
    return *tp;
  }

  CommandResult sign() {
    const System sys = system();
    KRSequence seq(sys, base_point(sys));
    const auto tp = perm_input(seq);
    const auto s = sign_vector(tp);
    std::ostringstream t;
    t << "level " << tp.level << " signs:";
    for (int v : s.signs) t << " " << v;
    t << "\n";
    Json p{{"level", tp.level}, {"signs", signs_json(s)}};
    if (auto c = transposition_counts(tp)) p["transpositions"] = *c;
    return finish(s.all_even() ? "Even" : "Odd", kOk, p, t.str());
  }

  CommandResult commutator() {
    const System sys = system();
    KRSequence seq(sys, base_point(sys));
    const auto tp = perm_input(seq);
    const auto v = in_commutator(seq, tp, o_.depth);
    Json signs = Json::array();
    std::ostringstream t;
    for (const auto& s : v.signs) {
      signs.push_back({{"level", s.level}, {"signs", signs_json(s)}});
      t << "level " << s.level << ":";
      for (int x : s.signs) t << " " << x;
      t << "\n";
    }
    return finish(v.yes ? "Yes" : "NotUpToDepth", v.yes ? kOk : kNegative, {{"level", v.level}, {"signs", signs}},
                  t.str());
  }

  CommandResult dense_approx() {
    const System sys = system();
    KRSequence seq(sys, base_point(sys));
    const auto tp = perm_input(seq);
    const auto d = derived_approx(seq, tp, std::max(o_.target, tp.level));
    const auto f = gamma_element(sys, seq.level(d.level), d);
    return finish("Approximation", kOk, {{"perm", io::perm_to_json(d)}, {"element", io::element_to_json(f)}},
                  "perm: " + io::perm_to_json(d).dump() + "\nelement: " + io::element_to_json(f).dump() + "\n");
  }

  CommandResult involution() {
    const System sys = system();
    KRSequence seq(sys, base_point(sys));
    const auto tp = involution_in(seq, parse_clopen(sys.space(), o_.clopen), o_.max_level);
    const auto f = gamma_element(sys, seq.level(tp.level), tp);
    return finish("Involution", kOk, {{"perm", io::perm_to_json(tp)}, {"element", io::element_to_json(f)}},
                  "perm: " + io::perm_to_json(tp).dump() + "\nelement: " + io::element_to_json(f).dump() + "\n");
  }

  CommandResult orbit() {
    const System sys = system();
    KRSequence seq(sys, base_point(sys));
    const auto a = parse_clopen(sys.space(), o_.a), b = parse_clopen(sys.space(), o_.b);
    const auto st = orbit_decide(seq, a, b, o_.max_level);
    Json p{{"level", st.level}};
    std::ostringstream t;
    if (st.mu_a) {
      p["mu_a"] = io::rational_string(*st.mu_a);
      p["mu_b"] = io::rational_string(*st.mu_b);
      t << "mu(a) = " << *st.mu_a << ", mu(b) = " << *st.mu_b << "\n";
    }
    if (st.witness) {
      const auto f = gamma_element(sys, seq.level(st.level), *st.witness);
      p["witness"] = io::perm_to_json(*st.witness);
      p["witness_element"] = io::element_to_json(f);
      t << "level " << st.level << " witness: " << io::perm_to_json(*st.witness).dump() << "\n";
    }
    if (st.verdict == OrbitVerdict::not_yet_equivalent) {
      p["caveat"] = kNotYetCaveat;
      t << kNotYetCaveat << "\n";
    }
    const bool yes = st.verdict == OrbitVerdict::equivalent;
    return finish(to_string(st.verdict), yes ? kOk : kNegative, p, t.str());
  }

  CommandResult soe() {
    if (o_.files.size() != 2) throw InputError("soe check needs two system descriptors");
    const System s1 = load_system_arg(o_.files[0]), s2 = load_system_arg(o_.files[1]);
    const auto pi = soe_backandforth(s1, s2, o_.depth);
    if (!s1.is_odometer() || !s2.is_odometer())
      return finish("EvidenceOnly", kNegative, {{"reason", pi.reason}}, pi.reason + "\n");
    const auto d = soe_decide(s1, s2);
    Json p = Json::object();
    std::ostringstream t;
    Json vals = Json::object();
    const auto v1 = supernatural(s1), v2 = supernatural(s2);
    std::set<std::uint64_t> primes;
    for (auto& [q, v] : v1) primes.insert(q);
    for (auto& [q, v] : v2) primes.insert(q);
    for (auto q : primes) {
      const Valuation a = v1.count(q) ? v1.at(q) : Valuation{0};
      const Valuation b = v2.count(q) ? v2.at(q) : Valuation{0};
      vals[std::to_string(q)] = {to_string(a), to_string(b)};
      t << "v_" << q << ": " << to_string(a) << " vs " << to_string(b) << "\n";
    }
    p["valuations"] = vals;
    if (d.obstruction) {
      const auto& ob = *d.obstruction;
      p["obstruction"] = {{"prime", ob.prime},
                          {"v1", to_string(ob.v1)},
                          {"v2", to_string(ob.v2)},
                          {"gap", io::rational_string(ob.gap)},
                          {"realizable_in", ob.realizable_in}};
      t << "obstruction: prime " << ob.prime << ", clopen measure " << ob.gap << " occurs only in system "
        << ob.realizable_in << "\n";
    }
    Json ladder = Json::array();
    for (const auto& r : pi.rungs) {
      ladder.push_back({{"n", r.n},
                        {"m", r.m},
                        {"direction", r.forward ? "forward" : "backward"},
                        {"h1", factor_json(r.h1)},
                        {"h2", factor_json(r.h2)}});
      t << (r.forward ? "forward" : "backward") << " rung: level " << r.n << " <-> level " << r.m << "\n";
    }
    p["ladder"] = ladder;
    if (pi.stuck) {
      p["stuck"] = {{"level", pi.stuck_level}, {"reason", pi.reason}};
      t << "stuck: " << pi.reason << "\n";
    } else {
      const auto rep = soe_cocycle_report(pi, o_.horizon);
      Json rungs = Json::array();
      for (const auto& c : rep.rungs)
        rungs.push_back({{"rung", c.rung},
                         {"first_exceptional", c.first_exceptional},
                         {"constant_measure", io::rational_string(c.constant_measure)},
                         {"exceptional_measure", io::rational_string(c.exceptional_measure)},
                         {"atoms_checked", c.atoms_checked}});
      p["cocycle"] = {{"rungs", rungs}, {"violation", rep.violation}, {"detail", rep.detail}};
      if (!rep.rungs.empty())
        t << "cocycle constant off a set of measure " << rep.rungs.back().exceptional_measure << "\n";
    }
    p["ladder_agrees"] = d.equivalent == !pi.stuck;
    return finish(d.equivalent ? "Equivalent" : "Distinct", d.equivalent ? kOk : kNegative, p, t.str());
  }

  CommandResult enumerate(const std::string& kind) {
    const System sys = system();
    Stream s;
    if (kind == "tfg") s = enum_tfg(sys, o_.start, o_.count, o_.dedup, o_.budget);
    else if (kind == "gamma") s = enum_gamma(sys, base_point(sys), o_.start, o_.count, o_.dedup, o_.budget, o_.horizon);
    else s = enum_dgamma(sys, base_point(sys), o_.count, o_.budget);
    CommandResult r;
    r.verdict = s.truncated ? "Truncated" : "Stream";
    r.exit_code = s.truncated ? kResourceCap : kOk;
    std::ostringstream os;
    for (const auto& e : s.items) os << Json{{"code", e.code}, {"element", io::element_to_json(e.element)}}.dump() << "\n";
    os << Json{{"verdict", r.verdict}, {"count", s.items.size()}, {"truncated", s.truncated}}.dump() << "\n";
    r.out = os.str();
    return r;
  }

 private:
  const Opts& o_;
};

}  // namespace

System load_system_arg(const std::string& arg) {
  const auto colon = arg.find(':');
  const std::string kind = colon == std::string::npos ? "" : arg.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : arg.substr(colon + 1);
  if (kind == "odometer") {
    const auto semi = body.find(';');
    const auto prefix = semi == std::string::npos ? std::vector<int>{} : int_csv(body.substr(0, semi));
    const auto period = int_csv(semi == std::string::npos ? body : body.substr(semi + 1));
    return io::parse_system(Json{{"odometer", {{"prefix", prefix}, {"period", period}}}}.dump());
  }
  if (kind == "stationary") {
    Json rows = Json::array();
    std::stringstream ss(body);
    std::string row;
    while (std::getline(ss, row, '/')) rows.push_back(int_csv(row));
    return io::parse_system(Json{{"stationary", rows}}.dump());
  }
  return io::load_system_file(arg);
}

std::string render_towers(const KRSequence& seq, std::size_t level) {
  const auto& xi = seq.level(level);
  std::vector<std::vector<std::string>> cols;
  std::vector<std::size_t> width;
  std::size_t rows = 0;
  for (const auto& t : xi.towers) {
    std::vector<std::string> c;
    std::size_t w = 1;
    for (const auto& f : t.floors) {
      c.push_back(to_literal(f));
      w = std::max(w, c.back().size());
    }
    rows = std::max(rows, c.size());
    cols.push_back(std::move(c));
    width.push_back(w);
  }
  auto line = [&](auto cell) {
    std::string s;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      std::string v = cell(i);
      v.resize(width[i], ' ');
      s += (i ? "  " : "") + v;
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s + "\n";
  };
  std::string out;
  for (std::size_t r = rows; r-- > 0;) out += line([&](std::size_t i) { return r < cols[i].size() ? cols[i][r] : ""; });
  out += line([](std::size_t) { return std::string("^"); });
  out.pop_back();
  out += "  phi: tops -> bases\n";
  return out;
}

CommandResult run(const std::vector<std::string>& args) {
  Opts o;
  CLI::App app{"Kakutani-Rokhlin towers, full groups and orbit decisions for minimal Cantor systems", "cantor"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* c) {
    c->add_option("--system", o.system, "odometer:2,3 | odometer:5;2 | stationary:1,1/1,1 | descriptor.json")
        ->capture_default_str();
    c->add_option("--x0", o.x0, "base point literal prefix(period); default 0^inf or the min path");
    c->add_flag("--json", o.json, "machine-readable output");
  };

  auto* sys_cmd = app.add_subcommand("system", "describe a system and check minimality");
  common(sys_cmd);
  sys_cmd->add_option("--horizon", o.horizon, "power bound for the incidence check")->capture_default_str();

  auto* towers = app.add_subcommand("towers", "K-R partitions of the sequence around x0");
  common(towers);
  towers->add_option("--max-level", o.towers_level, "last level")->capture_default_str();
  towers->add_flag("--dump-towers", o.dump_towers, "draw each level");

  auto* group = app.add_subcommand("group", "topological full group elements");
  group->require_subcommand(1);
  auto* validate = group->add_subcommand("validate", "check that pieces form a homeomorphism");
  auto* member = group->add_subcommand("member", "decide membership in Gamma_x0");
  auto* sign = group->add_subcommand("sign", "sign vector of an element of Gamma_n");
  auto* comm = group->add_subcommand("commutator", "look for an all-even level");
  auto* dense = group->add_subcommand("dense-approx", "all-even element agreeing on the level algebra");
  auto* invol = group->add_subcommand("involution", "involution supported in a clopen");
  for (auto* c : {validate, member, sign, comm, dense, invol}) common(c);
  for (auto* c : {validate, member, sign, comm}) c->add_option("--element", o.element, "JSON piece list or @file");
  for (auto* c : {sign, comm, dense}) {
    c->add_option("--perm", o.perm, "JSON tower permutation or @file");
    c->add_option("--level", o.level, "level of --element");
  }
  dense->add_option("--element", o.element, "JSON piece list or @file");
  validate->require_option(1);
  member->add_option("--horizon", o.horizon, "orbit scan cap")->capture_default_str();
  comm->add_option("--depth", o.depth, "last level to scan")->capture_default_str();
  dense->add_option("--target", o.target, "level of the approximation (default: the input level)");
  invol->add_option("--clopen", o.clopen, "clopen literal")->required();
  invol->add_option("--max-level", o.max_level, "last level to search")->capture_default_str();

  auto* orbit = app.add_subcommand("orbit", "orbit equivalence of clopens");
  orbit->require_subcommand(1);
  auto* decide = orbit->add_subcommand("decide", "scan levels for equal count vectors");
  common(decide);
  decide->add_option("--a", o.a, "clopen literal")->required();
  decide->add_option("--b", o.b, "clopen literal")->required();
  decide->add_option("--max-level", o.max_level, "last level to scan")->capture_default_str();

  auto* soe = app.add_subcommand("soe", "strong orbit equivalence of odometers");
  soe->require_subcommand(1);
  auto* check = soe->add_subcommand("check", "decide and build the back-and-forth ladder");
  check->add_option("systems", o.files, "two system descriptors")->expected(2)->required();
  check->add_option("--depth", o.depth, "ladder rungs")->capture_default_str();
  check->add_option("--horizon", o.horizon, "atoms checked by the cocycle report")->capture_default_str();
  check->add_flag("--json", o.json, "machine-readable output");

  auto* en = app.add_subcommand("enum", "enumerations as JSON lines");
  en->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> streams;
  for (const char* kind : {"tfg", "gamma", "dgamma"}) {
    auto* c = en->add_subcommand(kind, std::string("stream ") + kind);
    common(c);
    c->add_option("--count", o.count, "items to emit")->capture_default_str();
    c->add_option("--budget", o.budget, "codes (or steps) scanned at most")->capture_default_str();
    if (std::string(kind) != "dgamma") {
      c->add_option("--start", o.start, "first code")->capture_default_str();
      c->add_flag("--dedup", o.dedup, "drop repeats");
    }
    if (std::string(kind) == "gamma") c->add_option("--horizon", o.horizon, "orbit scan cap")->capture_default_str();
    streams.emplace_back(kind, c);
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    CommandResult r;
    r.out = out.str();
    r.err = err.str();
    r.exit_code = code == 0 ? kOk : kInputError;
    r.verdict = code == 0 ? "Help" : "UsageError";
    if (code != 0 && r.err.find("Run with --help") == std::string::npos) r.err += app.help();
    return r;
  }

  Runner runner(o);
  try {
    if (*sys_cmd) return runner.system_info();
    if (*towers) return runner.towers();
    if (*validate) return runner.validate();
    if (*member) return runner.member();
    if (*sign) return runner.sign();
    if (*comm) return runner.commutator();
    if (*dense) return runner.dense_approx();
    if (*invol) return runner.involution();
    if (*decide) return runner.orbit();
    if (*check) return runner.soe();
    for (auto& [kind, c] : streams)
      if (*c) return runner.enumerate(kind);
  } catch (const ResourceCap& e) {
    return {kResourceCap, "ResourceCap", "", std::string("resource cap: ") + e.what() + "\n"};
  } catch (const std::runtime_error& e) {
    return {kInputError, "InputError", "", std::string("error: ") + e.what() + "\n"};
  }
  return {kInputError, "UsageError", "", app.help()};
}

}  // namespace cantor::cli
