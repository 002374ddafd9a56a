#include "cantor/clopen.hpp"

#include <algorithm>
#include <numeric>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

void require_same(const Clopen& a, const Clopen& b) {
  if (!same_space(a.space(), b.space())) throw InputError("clopens live on different spaces");
}

// Sorted words of a and b, both expanded to a common depth.
std::pair<std::vector<Word>, std::vector<Word>> common(const Clopen& a, const Clopen& b,
                                                       std::size_t& depth) {
  depth = std::max(a.depth(), b.depth());
  return {a.words_at(depth), b.words_at(depth)};
}

std::string word_literal(const Word& w, bool dotted) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (dotted) {
      out += std::to_string(w[i]);
      out += '.';
    } else {
      out += static_cast<char>('0' + w[i]);
    }
  }
  if (dotted && w.size() > 1) out.pop_back();
  return out;
}

Word parse_word(std::string_view text) {
  Word w;
  auto bad = [&](const std::string& why) {
    return InputError("bad word literal '" + std::string(text) + "': " + why);
  };
  if (text.find('.') != std::string_view::npos) {
    std::size_t pos = 0;
    while (pos < text.size()) {
      auto dot = text.find('.', pos);
      auto piece = text.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
      if (piece.empty()) throw bad("empty symbol");
      unsigned value = 0;
      for (char c : piece) {
        if (c < '0' || c > '9') throw bad("non-digit symbol");
        value = value * 10 + static_cast<unsigned>(c - '0');
        if (value > 65535) throw bad("symbol too large");
      }
      w.push_back(static_cast<Symbol>(value));
      if (dot == std::string_view::npos) break;
      pos = dot + 1;
    }
    return w;
  }
  for (char c : text) {
    if (c < '0' || c > '9') throw bad("non-digit symbol");
    w.push_back(static_cast<Symbol>(c - '0'));
  }
  return w;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

// ---------------------------------------------------------------- Point

Point::Point(const SpacePtr& space, Word prefix, Word period) : prefix_(std::move(prefix)), period_(std::move(period)) {
  if (period_.empty()) throw InputError("point period must be nonempty");
  const std::size_t start = std::max(prefix_.size(), space->period_start());
  const std::size_t joint = std::lcm(period_.size(), space->period_length());
  const Word probe = head(start + joint + 1);
  if (auto bad = space->first_bad_index(probe))
    throw InputError("point is inadmissible at junction " + std::to_string(*bad));

  for (std::size_t p = 1; p < period_.size(); ++p) {
    if (period_.size() % p != 0) continue;
    bool repeats = true;
    for (std::size_t i = p; i < period_.size() && repeats; ++i) repeats = period_[i] == period_[i - p];
    if (repeats) {
      period_.resize(p);
      break;
    }
  }
  while (!prefix_.empty() && prefix_.back() == period_.back()) {
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    prefix_.pop_back();
  }
}

Word Point::head(std::size_t n) const {
  Word w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = at(i);
  return w;
}

Point Point::spliced(const SpacePtr& space, const Word& head) const {
  if (head.size() <= prefix_.size()) {
    Word p = head;
    p.insert(p.end(), prefix_.begin() + static_cast<std::ptrdiff_t>(head.size()), prefix_.end());
    return Point(space, std::move(p), period_);
  }
  const std::size_t offset = (head.size() - prefix_.size()) % period_.size();
  Word per = period_;
  std::rotate(per.begin(), per.begin() + static_cast<std::ptrdiff_t>(offset), per.end());
  return Point(space, head, std::move(per));
}

// ---------------------------------------------------------------- Clopen

Clopen make_canonical(const SpacePtr& space, std::size_t depth, std::vector<Word> words) {
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  while (depth > 0 && !words.empty()) {
    std::vector<Word> parents;
    bool mergeable = true;
    for (std::size_t i = 0; i < words.size() && mergeable;) {
      std::size_t j = i;
      while (j < words.size() && std::equal(words[i].begin(), words[i].end() - 1, words[j].begin())) ++j;
      Word parent(words[i].begin(), words[i].end() - 1);
      const auto kids = space->children(depth - 1, space->end_vertex(parent)).size();
      if (j - i != kids) mergeable = false;
      parents.push_back(std::move(parent));
      i = j;
    }
    if (!mergeable) break;
    words = std::move(parents);
    --depth;
  }
  Clopen c;
  c.space_ = space;
  c.depth_ = words.empty() ? 0 : depth;
  c.words_ = std::move(words);
  return c;
}

Clopen Clopen::empty(const SpacePtr& space) { return make_canonical(space, 0, {}); }

Clopen Clopen::full(const SpacePtr& space) { return make_canonical(space, 0, {Word{}}); }

Clopen Clopen::cylinder(const SpacePtr& space, Word w) {
  if (auto bad = space->first_bad_index(w))
    throw InputError("inadmissible word: fails at junction " + std::to_string(*bad));
  const auto d = w.size();
  return make_canonical(space, d, {std::move(w)});
}

Clopen Clopen::from_words(const SpacePtr& space, const std::vector<Word>& words) {
  std::size_t d = 0;
  for (const auto& w : words) {
    if (auto bad = space->first_bad_index(w))
      throw InputError("inadmissible word: fails at junction " + std::to_string(*bad));
    d = std::max(d, w.size());
  }
  std::vector<Word> expanded;
  for (const auto& w : words) {
    auto part = make_canonical(space, w.size(), {w}).words_at(d);
    expanded.insert(expanded.end(), part.begin(), part.end());
  }
  return make_canonical(space, d, std::move(expanded));
}

std::vector<Word> Clopen::words_at(std::size_t d) const {
  if (d < depth_) throw PreconditionError("cannot coarsen a clopen below its canonical depth");
  if (d == depth_) return words_;
  std::vector<Word> out;
  for (const auto& w : words_) {
    Word cur = w;
    auto rec = [&](auto&& self, int v) -> void {
      if (cur.size() == d) {
        out.push_back(cur);
        return;
      }
      const auto l = cur.size();
      for (Symbol s : space_->children(l, v)) {
        cur.push_back(s);
        self(self, space_->edge(l, s).dst);
        cur.pop_back();
      }
    };
    rec(rec, space_->end_vertex(cur));
  }
  return out;  // sorted: parents sorted, children in ascending symbol order
}

bool Clopen::contains(const Point& x) const {
  if (words_.empty()) return false;
  const Word h = x.head(depth_);
  return std::binary_search(words_.begin(), words_.end(), h);
}

// ---------------------------------------------------------------- Boolean algebra

Clopen unite(const Clopen& a, const Clopen& b) {
  require_same(a, b);
  std::size_t d;
  auto [x, y] = common(a, b, d);
  std::vector<Word> out;
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return make_canonical(a.space(), d, std::move(out));
}

Clopen intersect(const Clopen& a, const Clopen& b) {
  require_same(a, b);
  std::size_t d;
  auto [x, y] = common(a, b, d);
  std::vector<Word> out;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return make_canonical(a.space(), d, std::move(out));
}

Clopen difference(const Clopen& a, const Clopen& b) {
  require_same(a, b);
  std::size_t d;
  auto [x, y] = common(a, b, d);
  std::vector<Word> out;
  std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return make_canonical(a.space(), d, std::move(out));
}

Clopen complement(const Clopen& a) {
  const auto all = a.space()->words(a.depth());
  std::vector<Word> out;
  std::set_difference(all.begin(), all.end(), a.words().begin(), a.words().end(), std::back_inserter(out));
  return make_canonical(a.space(), a.depth(), std::move(out));
}

Clopen boolean_op(BoolOp kind, const Clopen& a, const std::optional<Clopen>& b) {
  if (kind == BoolOp::complement) return complement(a);
  if (!b) throw InputError("binary Boolean operation needs two operands");
  switch (kind) {
    case BoolOp::unite: return unite(a, *b);
    case BoolOp::intersect: return intersect(a, *b);
    case BoolOp::difference: return difference(a, *b);
    default: break;
  }
  return a;
}

Relation compare(const Clopen& a, const Clopen& b) {
  require_same(a, b);
  if (a == b) return Relation::equal;
  std::size_t d;
  auto [x, y] = common(a, b, d);
  std::size_t both = 0;
  for (std::size_t i = 0, j = 0; i < x.size() && j < y.size();) {
    if (x[i] < y[j]) {
      ++i;
    } else if (y[j] < x[i]) {
      ++j;
    } else {
      ++both, ++i, ++j;
    }
  }
  if (both == x.size()) return Relation::subset;
  if (both == y.size()) return Relation::superset;
  if (both == 0) return Relation::disjoint;
  return Relation::incomparable;
}

bool is_subset(const Clopen& a, const Clopen& b) {
  const auto r = compare(a, b);
  return r == Relation::equal || r == Relation::subset;
}

bool are_disjoint(const Clopen& a, const Clopen& b) {
  if (a.is_empty() || b.is_empty()) return true;
  return compare(a, b) == Relation::disjoint;
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::equal: return "equal";
    case Relation::subset: return "a_subset_b";
    case Relation::superset: return "b_subset_a";
    case Relation::disjoint: return "disjoint";
    case Relation::incomparable: return "incomparable";
  }
  return "?";
}

// ---------------------------------------------------------------- literals

std::string to_literal(const Clopen& a) {
  if (a.is_empty()) return "EMPTY";
  if (a.is_full()) return "X";
  bool dotted = false;
  for (const auto& w : a.words())
    for (Symbol s : w) dotted = dotted || s > 9;
  std::string out;
  for (const auto& w : a.words()) {
    if (!out.empty()) out += '+';
    out += word_literal(w, dotted);
  }
  return out;
}

Clopen parse_clopen(const SpacePtr& space, std::string_view literal) {
  const std::string text = trim(literal);
  if (text == "X") return Clopen::full(space);
  if (text == "EMPTY" || text.empty()) return Clopen::empty(space);
  std::vector<Word> words;
  std::size_t pos = 0;
  while (true) {
    auto plus = text.find('+', pos);
    words.push_back(parse_word(trim(std::string_view(text).substr(pos, plus == std::string::npos ? std::string::npos : plus - pos))));
    if (plus == std::string::npos) break;
    pos = plus + 1;
  }
  return Clopen::from_words(space, words);
}

std::string to_literal(const Point& x) {
  bool dotted = false;
  for (Symbol s : x.prefix()) dotted = dotted || s > 9;
  for (Symbol s : x.period()) dotted = dotted || s > 9;
  auto part = [&](const Word& w) {
    std::string t = word_literal(w, dotted);
    if (dotted && w.size() == 1) t.pop_back();
    if (dotted && w.size() == 1 && w[0] > 9) t += '.';
    return t;
  };
  return part(x.prefix()) + "(" + part(x.period()) + ")";
}

Point parse_point(const SpacePtr& space, std::string_view literal) {
  const std::string text = trim(literal);
  const auto open = text.find('(');
  if (open == std::string::npos || text.back() != ')')
    throw InputError("point literal must look like prefix(period), got '" + text + "'");
  const auto prefix = parse_word(std::string_view(text).substr(0, open));
  const auto period = parse_word(std::string_view(text).substr(open + 1, text.size() - open - 2));
  return Point(space, prefix, period);
}

Clopen basis_cylinder(const SpacePtr& space, std::uint64_t n) {
  return Clopen::cylinder(space, space->length_lex_word(n));
}

}  // namespace cantor
