#include "cantor/system.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

constexpr std::size_t kSplitDepthCap = 1 << 14;

// Unique infinite path of maximal (or minimal) edges, when there is one.
std::optional<Point> extreme_point(const SpacePtr& sp, bool maximal) {
  const std::size_t p0 = sp->period_start();
  const std::size_t per = sp->period_length();
  const int n = sp->vertices(p0);
  auto pick = [&](std::size_t l, int v) {
    auto in = sp->incoming(l, v);
    return maximal ? in.back() : in.front();
  };
  // F: vertex at level p0+per -> vertex at level p0 along extreme edges
  std::vector<int> f(n);
  for (int v = 0; v < n; ++v) {
    int u = v;
    for (std::size_t l = p0 + per; l-- > p0;) u = sp->edge(l, pick(l, u)).src;
    f[v] = u;
  }
  std::vector<int> periodic;
  for (int v = 0; v < n; ++v) {
    int u = v;
    for (int k = 0; k < n; ++k) {
      u = f[u];
      if (u == v) {
        periodic.push_back(v);
        break;
      }
    }
  }
  if (periodic.size() != 1 || f[periodic[0]] != periodic[0]) return std::nullopt;
  const int star = periodic[0];
  Word period(per);
  int u = star;
  for (std::size_t l = p0 + per; l-- > p0;) {
    period[l - p0] = pick(l, u);
    u = sp->edge(l, period[l - p0]).src;
  }
  Word prefix = maximal ? sp->max_path_to(p0, star) : sp->min_path_to(p0, star);
  return Point(sp, std::move(prefix), std::move(period));
}

// First index at which x leaves the extreme edges, scanning one full joint period.
std::optional<std::size_t> first_non_extreme(const Space& sp, const Point& x, bool maximal) {
  const std::size_t bound = std::max(x.prefix().size(), sp.period_start()) +
                            std::lcm(x.period().size(), sp.period_length());
  for (std::size_t i = 0; i < bound; ++i) {
    const Symbol s = x.at(i);
    if (maximal ? !sp.is_max_edge(i, s) : !sp.is_min_edge(i, s)) return i;
  }
  return std::nullopt;
}

Word add_mixed_radix(const Space& sp, Word w, std::int64_t k) {
  std::int64_t carry = k;
  for (std::size_t l = 0; l < w.size() && carry != 0; ++l) {
    const auto b = static_cast<std::int64_t>(sp.alphabet(l));
    std::int64_t t = static_cast<std::int64_t>(w[l]) + carry;
    std::int64_t q = t / b, r = t % b;
    if (r < 0) r += b, --q;
    w[l] = static_cast<Symbol>(r);
    carry = q;
  }
  return w;
}

void rewrite_cylinder(const System& sys, Word& w, bool forward, std::vector<Word>& out) {
  const auto& sp = *sys.space();
  if (w.size() > kSplitDepthCap) throw ResourceCap("cylinder split depth exceeded while evaluating the map");
  for (std::size_t i = 0; i < w.size(); ++i) {
    const bool extreme = forward ? sp.is_max_edge(i, w[i]) : sp.is_min_edge(i, w[i]);
    if (extreme) continue;
    const Symbol s = forward ? sp.next_edge(i, w[i]) : sp.prev_edge(i, w[i]);
    const int src = sp.edge(i, s).src;
    Word img = forward ? sp.min_path_to(i, src) : sp.max_path_to(i, src);
    img.push_back(s);
    img.insert(img.end(), w.begin() + static_cast<std::ptrdiff_t>(i + 1), w.end());
    out.push_back(std::move(img));
    return;
  }
  const auto l = w.size();
  const auto kids = sp.children(l, sp.end_vertex(w));
  for (Symbol s : kids) {
    w.push_back(s);
    rewrite_cylinder(sys, w, forward, out);
    w.pop_back();
  }
}

Clopen step_clopen(const System& sys, const Clopen& a, bool forward) {
  if (a.is_empty() || a.is_full()) return a;
  const Point& pole = forward ? sys.max_point() : sys.min_point();
  if (a.contains(pole)) return complement(step_clopen(sys, complement(a), forward));
  std::vector<Word> out;
  for (Word w : a.words()) rewrite_cylinder(sys, w, forward, out);
  return Clopen::from_words(sys.space(), out);
}

}  // namespace

System System::build(SpacePtr space, bool odometer, std::vector<int> prefix, std::vector<int> period) {
  auto st = std::make_shared<State>();
  st->odometer = odometer;
  st->space = std::move(space);
  st->prefix = std::move(prefix);
  st->period = std::move(period);
  st->max_point = extreme_point(st->space, true);
  st->min_point = extreme_point(st->space, false);
  System s;
  s.state_ = std::move(st);
  return s;
}

System System::odometer(std::vector<int> prefix, std::vector<int> period) {
  auto sp = Space::product(prefix, period);
  return build(std::move(sp), true, std::move(prefix), std::move(period));
}

System System::diagram(std::vector<LevelSpec> levels, std::size_t period_start) {
  auto sp = Space::diagram(std::move(levels), period_start);
  return build(std::move(sp), false, {}, {});
}

System System::stationary(const std::vector<std::vector<int>>& matrix) {
  const int n = static_cast<int>(matrix.size());
  if (n == 0) throw InputError("stationary diagram needs a nonempty matrix");
  LevelSpec root;
  root.vertices = 1;
  for (int v = 0; v < n; ++v) root.edges.push_back({0, v, 0});
  LevelSpec body;
  body.vertices = n;
  for (int v = 0; v < n; ++v) {
    if (static_cast<int>(matrix[v].size()) != n) throw InputError("incidence matrix must be square");
    int order = 0;
    for (int u = 0; u < n; ++u) {
      if (matrix[v][u] < 0) throw InputError("incidence entries must be non-negative");
      for (int e = 0; e < matrix[v][u]; ++e) body.edges.push_back({u, v, order++});
    }
  }
  std::sort(body.edges.begin(), body.edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.src, a.dst, a.order) < std::tie(b.src, b.dst, b.order);
  });
  return diagram({root, body}, 1);
}

const Point& System::max_point() const {
  if (!state_->max_point) throw PreconditionError("diagram is not properly ordered: no unique maximal path");
  return *state_->max_point;
}

const Point& System::min_point() const {
  if (!state_->min_point) throw PreconditionError("diagram is not properly ordered: no unique minimal path");
  return *state_->min_point;
}

std::string System::describe() const {
  std::ostringstream os;
  auto list = [&](const std::vector<int>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  };
  if (is_odometer()) {
    os << "odometer(";
    list(base_prefix());
    os << "|";
    list(base_period());
    os << ")";
  } else {
    os << "bv(levels=" << space()->level_specs().size() << ",period_start=" << space()->period_start() << ")";
  }
  return os.str();
}

bool System::same_as(const System& other) const {
  return is_odometer() == other.is_odometer() && same_space(space(), other.space());
}

Point successor(const System& sys, const Point& x) {
  const auto& sp = sys.space();
  auto i = first_non_extreme(*sp, x, true);
  if (!i) {
    if (x != sys.max_point()) throw PreconditionError("point has no Vershik successor");
    return sys.min_point();
  }
  const Symbol s = sp->next_edge(*i, x.at(*i));
  Word head = sp->min_path_to(*i, sp->edge(*i, s).src);
  head.push_back(s);
  return x.spliced(sp, head);
}

Point predecessor(const System& sys, const Point& x) {
  const auto& sp = sys.space();
  auto i = first_non_extreme(*sp, x, false);
  if (!i) {
    if (x != sys.min_point()) throw PreconditionError("point has no Vershik predecessor");
    return sys.max_point();
  }
  const Symbol s = sp->prev_edge(*i, x.at(*i));
  Word head = sp->max_path_to(*i, sp->edge(*i, s).src);
  head.push_back(s);
  return x.spliced(sp, head);
}

Point image_point(const System& sys, const Point& x, std::int64_t k) {
  Point y = x;
  for (; k > 0; --k) y = successor(sys, y);
  for (; k < 0; ++k) y = predecessor(sys, y);
  return y;
}

Clopen image_clopen(const System& sys, const Clopen& a, std::int64_t k) {
  if (!same_space(sys.space(), a.space())) throw InputError("clopen does not live on the system's space");
  if (k == 0 || a.is_empty() || a.is_full()) return a;
  if (sys.is_odometer()) {
    std::vector<Word> out;
    out.reserve(a.words().size());
    for (const auto& w : a.words()) out.push_back(add_mixed_radix(*sys.space(), w, k));
    return make_canonical(sys.space(), a.depth(), std::move(out));
  }
  Clopen c = a;
  for (; k > 0; --k) c = step_clopen(sys, c, true);
  for (; k < 0; ++k) c = step_clopen(sys, c, false);
  return c;
}

Rational invariant_measure(const System& sys, const Clopen& a) {
  if (!sys.is_odometer()) throw PreconditionError("invariant measure is only available for odometers");
  BigInt den = 1;
  for (std::size_t l = 0; l < a.depth(); ++l) den *= sys.base(l);
  return Rational(BigInt(a.words().size()), den);
}

MinimalityReport minimality_evidence(const System& sys, std::size_t horizon) {
  MinimalityReport rep;
  if (horizon < 1) throw InputError("horizon must be at least 1");
  if (sys.is_odometer()) {
    rep.verdict = MinimalityVerdict::certified;
    rep.detail = "odometers are minimal";
    return rep;
  }
  const auto& sp = *sys.space();
  const std::size_t p0 = sp.period_start();
  const int n = sp.vertices(p0);
  using Mat = std::vector<std::vector<char>>;
  Mat b(n, std::vector<char>(n, 0));
  for (int u = 0; u < n; ++u) {
    std::vector<char> cur(n, 0);
    cur[u] = 1;
    for (std::size_t l = p0; l < p0 + sp.period_length(); ++l) {
      std::vector<char> nxt(sp.vertices(l + 1), 0);
      for (const auto& e : sp.level(l).edges)
        if (cur[e.src]) nxt[e.dst] = 1;
      cur = std::move(nxt);
    }
    b[u] = cur;
  }
  auto mul = [&](const Mat& x, const Mat& y) {
    Mat z(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        if (x[i][k])
          for (int j = 0; j < n; ++j) z[i][j] |= y[k][j];
    return z;
  };
  // reachability in >= 1 steps
  Mat reach = b;
  for (int it = 0; it < n; ++it) {
    Mat next = reach;
    auto step = mul(reach, b);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) next[i][j] |= step[i][j];
    reach = std::move(next);
  }
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (!reach[u][v]) {
        rep.witness = {u, v};
        rep.detail = "vertex " + std::to_string(v) + " is unreachable from vertex " + std::to_string(u);
        return rep;
      }
  Mat pw = b;
  for (std::size_t t = 1; t <= horizon; ++t) {
    bool positive = true;
    for (int i = 0; i < n && positive; ++i)
      for (int j = 0; j < n && positive; ++j) positive = pw[i][j];
    if (positive) {
      rep.power = t;
      break;
    }
    if (t == horizon) {
      for (int i = 0; i < n && !rep.witness; ++i)
        for (int j = 0; j < n; ++j)
          if (!pw[i][j]) {
            rep.witness = {i, j};
            break;
          }
      rep.detail = "no positive power of the incidence matrix up to the horizon";
      return rep;
    }
    pw = mul(pw, b);
  }
  if (!sys.properly_ordered()) {
    rep.detail = "order is not proper: maximal or minimal infinite path is not unique";
    return rep;
  }
  rep.verdict = MinimalityVerdict::evidence_to_horizon;
  rep.detail = "incidence power " + std::to_string(rep.power) + " is positive";
  return rep;
}

const char* to_string(MinimalityVerdict v) {
  switch (v) {
    case MinimalityVerdict::certified: return "certified";
    case MinimalityVerdict::evidence_to_horizon: return "evidence-to-horizon";
    case MinimalityVerdict::failed: return "failed";
  }
  return "?";
}

}  // namespace cantor
