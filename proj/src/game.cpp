#include "game.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "error.hpp"

namespace sstar {

namespace {

// Canonical total order: nimbers by value first, everything else by text.
struct SortKey {
  bool is_nimber;
  std::uint64_t value;
  std::string text;

  friend bool operator<(const SortKey& a, const SortKey& b) {
    if (a.is_nimber != b.is_nimber) return a.is_nimber;
    if (a.is_nimber) return a.value < b.value;
    return a.text < b.text;
  }
};

SortKey sort_key(const GamePosition& g) {
  if (auto n = g.as_nimber()) return {true, *n, {}};
  return {false, 0, g.canonical()};
}

SortKey sort_key(const Component& c) {
  if (auto n = c.nimber()) return {true, n->value, {}};
  return {false, 0, c.canonical()};
}

void normalize_options(std::vector<GamePosition>& opts) {
  std::vector<std::pair<SortKey, GamePosition>> keyed;
  keyed.reserve(opts.size());
  for (auto& g : opts) keyed.emplace_back(sort_key(g), std::move(g));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  opts.clear();
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i > 0 && !(keyed[i - 1].first < keyed[i].first)) continue;
    opts.push_back(std::move(keyed[i].second));
  }
}

std::string join_options(const std::vector<GamePosition>& opts) {
  std::string out;
  for (std::size_t i = 0; i < opts.size(); ++i) {
    if (i > 0) out += ',';
    out += opts[i].canonical();
  }
  return out;
}

// The largest nimber expanded into an explicit tree.
constexpr std::uint64_t kMaxTreeNimber = 1u << 12;

}  // namespace

struct GamePosition::Node {
  std::vector<GamePosition> left;
  std::vector<GamePosition> right;
  std::string canonical;
  std::optional<std::uint64_t> nimber;
};

GamePosition::GamePosition() : node_(nullptr) {}

GamePosition::GamePosition(std::vector<GamePosition> left,
                           std::vector<GamePosition> right) {
  auto node = std::make_shared<Node>();
  normalize_options(left);
  normalize_options(right);
  node->left = std::move(left);
  node->right = std::move(right);

  const auto& l = node->left;
  const auto& r = node->right;
  bool same = l.size() == r.size();
  for (std::size_t i = 0; same && i < l.size(); ++i) {
    auto n = l[i].as_nimber();
    same = n && *n == i && r[i].as_nimber() == n;
  }
  if (same) {
    node->nimber = l.size();
    node->canonical = to_string(Nimber(l.size()));
  } else {
    node->canonical = "{" + join_options(l) + "|" + join_options(r) + "}";
  }
  node_ = std::move(node);
}

GamePosition GamePosition::nimber(std::uint64_t n) {
  if (n > kMaxTreeNimber) {
    fail(ErrorCode::BudgetExceeded,
         "oracle-too-large: nimber *" + std::to_string(n) + " is too large to expand");
  }
  std::vector<GamePosition> built;
  built.reserve(n + 1);
  built.emplace_back();
  for (std::uint64_t k = 1; k <= n; ++k) {
    std::vector<GamePosition> opts(built.begin(), built.begin() + k);
    built.emplace_back(opts, opts);
  }
  return built.back();
}

namespace {

const std::vector<GamePosition>& empty_options() {
  static const std::vector<GamePosition> empty;
  return empty;
}

const std::string& zero_text() {
  static const std::string zero = "0";
  return zero;
}

}  // namespace

const std::vector<GamePosition>& GamePosition::left_options() const {
  return node_ ? node_->left : empty_options();
}

const std::vector<GamePosition>& GamePosition::right_options() const {
  return node_ ? node_->right : empty_options();
}

std::optional<std::uint64_t> GamePosition::as_nimber() const {
  return node_ ? node_->nimber : std::optional<std::uint64_t>(0);
}

const std::string& GamePosition::canonical() const {
  return node_ ? node_->canonical : zero_text();
}

GamePosition negate(const GamePosition& g) {
  if (g.as_nimber()) return g;
  std::vector<GamePosition> left, right;
  for (const auto& o : g.right_options()) left.push_back(negate(o));
  for (const auto& o : g.left_options()) right.push_back(negate(o));
  return GamePosition(std::move(left), std::move(right));
}

// ---------------------------------------------------------------- Component

Component::Component(Nimber n) : value_(n) {}

Component::Component(Superstar s) : value_(Nimber()) {
  if (auto n = s.as_nimber()) {
    value_ = Nimber(*n);
  } else {
    value_ = std::move(s);
  }
}

Component::Component(const GamePosition& g) : value_(Nimber()) {
  if (auto n = g.as_nimber()) {
    value_ = Nimber(*n);
    return;
  }
  Superstar::Indices sides[2];
  for (Player p : {Player::Left, Player::Right}) {
    for (const auto& o : g.options(p)) {
      auto n = o.as_nimber();
      if (!n) {
        value_ = g;
        return;
      }
      sides[static_cast<int>(p)].push_back(*n);
    }
  }
  value_ = Superstar(std::move(sides[0]), std::move(sides[1]));
}

Component::Component(std::shared_ptr<const RulesetGame> r) : value_(std::move(r)) {}

std::optional<Nimber> Component::nimber() const {
  if (const auto* n = std::get_if<Nimber>(&value_)) return *n;
  return std::nullopt;
}

bool Component::is_zero() const {
  if (const auto* n = std::get_if<Nimber>(&value_)) return n->is_zero();
  if (const auto* r = std::get_if<std::shared_ptr<const RulesetGame>>(&value_)) {
    return (*r)->options(Player::Left).empty() && (*r)->options(Player::Right).empty();
  }
  return false;
}

std::vector<Component> Component::options(Player p) const {
  std::vector<Component> out;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Nimber>) {
          for (std::uint64_t i = 0; i < v.value; ++i) out.emplace_back(Nimber(i));
        } else if constexpr (std::is_same_v<T, Superstar>) {
          for (auto i : v.side(p)) out.emplace_back(Nimber(i));
        } else if constexpr (std::is_same_v<T, GamePosition>) {
          for (const auto& o : v.options(p)) out.emplace_back(o);
        } else {
          out = v->options(p);
        }
      },
      value_);
  return out;
}

std::string Component::canonical() const {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Nimber>) {
          return to_string(v);
        } else if constexpr (std::is_same_v<T, Superstar>) {
          return v.to_string();
        } else if constexpr (std::is_same_v<T, GamePosition>) {
          return v.canonical();
        } else {
          return v->key();
        }
      },
      value_);
}

GamePosition to_tree(const Component& c) {
  if (auto n = c.nimber()) return GamePosition::nimber(n->value);
  if (const auto* g = std::get_if<GamePosition>(&c.value())) return *g;
  std::vector<GamePosition> sides[2];
  for (Player p : {Player::Left, Player::Right}) {
    for (const auto& o : c.options(p)) sides[static_cast<int>(p)].push_back(to_tree(o));
  }
  return GamePosition(std::move(sides[0]), std::move(sides[1]));
}

Component negate(const Component& c) {
  return std::visit(
      [&](const auto& v) -> Component {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Nimber>) {
          return v;
        } else if constexpr (std::is_same_v<T, Superstar>) {
          return Superstar(v.right(), v.left());
        } else if constexpr (std::is_same_v<T, GamePosition>) {
          return negate(v);
        } else {
          return negate(to_tree(c));
        }
      },
      c.value());
}

// -------------------------------------------------------------- SumPosition

SumPosition::SumPosition(std::vector<Component> components) {
  for (auto& c : components) add(std::move(c));
}

SumPosition::SumPosition(Component c) { add(std::move(c)); }

void SumPosition::add(Component c) {
  if (c.is_zero()) return;
  components_.push_back(std::move(c));
}

SumPosition& SumPosition::operator+=(const SumPosition& other) {
  for (const auto& c : other.components_) components_.push_back(c);
  return *this;
}

std::string SumPosition::canonical() const {
  std::vector<SortKey> keys;
  keys.reserve(components_.size());
  for (const auto& c : components_) {
    SortKey k = sort_key(c);
    if (k.is_nimber) k.text = to_string(Nimber(k.value));
    keys.push_back(std::move(k));
  }
  std::sort(keys.begin(), keys.end());
  if (keys.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i > 0) out += '+';
    out += keys[i].text;
  }
  return out;
}

SumPosition negate(const SumPosition& g) {
  SumPosition out;
  for (const auto& c : g.components()) out.add(negate(c));
  return out;
}

std::string to_text(const SumPosition& g) {
  if (g.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < g.components().size(); ++i) {
    if (i > 0) out += '+';
    out += g.components()[i].canonical();
  }
  return out;
}

// ------------------------------------------------------------------ parsing

namespace {

class SumParser {
 public:
  explicit SumParser(std::string_view text) {
    for (char ch : text) {
      if (!std::isspace(static_cast<unsigned char>(ch))) text_ += ch;
    }
  }

  SumPosition parse() {
    if (text_.empty()) error("empty input");
    SumPosition sum;
    sum.add(term());
    while (peek() == '+') {
      ++pos_;
      sum.add(term());
    }
    if (pos_ != text_.size()) error("unexpected character");
    return sum;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::Parse, "position text: " + what + " at offset " + std::to_string(pos_));
  }

  Component term() {
    char c = peek();
    if (c == '0') {
      ++pos_;
      return Nimber(0);
    }
    if (c == '*') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) return Nimber(1);
      return Nimber(number());
    }
    if (c == '{') {
      ++pos_;
      std::vector<Component> left = list('|');
      ++pos_;
      std::vector<Component> right = list('}');
      ++pos_;
      return braces(std::move(left), std::move(right));
    }
    error("expected a term");
  }

  std::uint64_t number() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) error("bad number");
    return value;
  }

  std::vector<Component> list(char close) {
    std::vector<Component> out;
    if (peek() == close) return out;
    out.push_back(term());
    while (peek() == ',') {
      ++pos_;
      out.push_back(term());
    }
    if (peek() != close) error(std::string("expected '") + close + "'");
    return out;
  }

  static Component braces(std::vector<Component> left, std::vector<Component> right) {
    auto all_nimbers = [](const std::vector<Component>& v) {
      return std::all_of(v.begin(), v.end(), [](const Component& c) { return c.is_nimber(); });
    };
    if (all_nimbers(left) && all_nimbers(right)) {
      if (left.empty() && right.empty()) return Nimber(0);
      Superstar::Indices l, r;
      for (const auto& c : left) l.push_back(c.nimber()->value);
      for (const auto& c : right) r.push_back(c.nimber()->value);
      return Superstar(std::move(l), std::move(r));
    }
    std::vector<GamePosition> l, r;
    for (const auto& c : left) l.push_back(to_tree(c));
    for (const auto& c : right) r.push_back(to_tree(c));
    return GamePosition(std::move(l), std::move(r));
  }

  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace

SumPosition parse_sum(std::string_view text) { return SumParser(text).parse(); }

// ------------------------------------------------------------------- Solver

std::size_t Solver::KeyHash::operator()(const std::vector<std::uint64_t>& k) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ k.size();
  for (std::uint64_t x : k) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    x ^= x >> 31;
    h = (h ^ x) * 0x100000001b3ull;
  }
  return static_cast<std::size_t>(h);
}

Solver::Solver(SolverOptions options) : options_(options) {}

void Solver::clear() {
  ids_.clear();
  table_.clear();
  memo_.clear();
  nodes_ = 0;
}

std::uint32_t Solver::intern(const Component& c) {
  std::string key = c.canonical();
  auto it = ids_.find(key);
  if (it != ids_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(table_.size());
  table_.push_back(Interned{c, false, {}});
  ids_.emplace(std::move(key), id);
  return id;
}

const Solver::Interned& Solver::expand(std::uint32_t id) {
  if (!table_[id].expanded) {
    for (Player p : {Player::Left, Player::Right}) {
      std::vector<Option> opts;
      for (const auto& o : table_[id].component.options(p)) {
        if (auto n = o.nimber()) {
          opts.push_back({true, n->value});
        } else {
          opts.push_back({false, intern(o)});
        }
      }
      table_[id].options[static_cast<int>(p)] = std::move(opts);
    }
    table_[id].expanded = true;
  }
  return table_[id];
}

void Solver::add_nimber(State& s, std::uint64_t v) const {
  if (options_.fold_nimbers) {
    if (s.nims.empty()) {
      if (v != 0) s.nims.push_back(v);
    } else {
      s.nims[0] ^= v;
      if (s.nims[0] == 0) s.nims.clear();
    }
    return;
  }
  if (v == 0) return;
  s.nims.insert(std::upper_bound(s.nims.begin(), s.nims.end(), v), v);
}

Solver::State Solver::make_state(const SumPosition& g) {
  State s;
  for (const auto& c : g.components()) {
    if (auto n = c.nimber()) {
      add_nimber(s, n->value);
    } else if (!c.is_zero()) {
      s.ids.push_back(intern(c));
    }
  }
  std::sort(s.ids.begin(), s.ids.end());
  return s;
}

bool Solver::wins(const State& s, Player p) {
  if (s.ids.empty()) {
    if (s.nims.empty()) return false;
    if (options_.nimber_short_circuit) {
      std::uint64_t x = 0;
      for (auto v : s.nims) x ^= v;
      return x != 0;
    }
  }

  std::vector<std::uint64_t> key;
  if (options_.memoize) {
    key.reserve(2 + s.nims.size() + s.ids.size());
    key.push_back(static_cast<std::uint64_t>(p));
    key.push_back(s.nims.size());
    key.insert(key.end(), s.nims.begin(), s.nims.end());
    key.insert(key.end(), s.ids.begin(), s.ids.end());
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }

  if (++nodes_ > options_.node_budget) {
    fail(ErrorCode::BudgetExceeded,
         "oracle-too-large: node budget of " + std::to_string(options_.node_budget) +
             " exceeded");
  }

  const Player next = opponent(p);
  bool result = false;

  for (std::size_t i = 0; i < s.ids.size() && !result; ++i) {
    if (i > 0 && s.ids[i] == s.ids[i - 1]) continue;
    const std::uint32_t id = s.ids[i];
    const std::size_t count = expand(id).options[static_cast<int>(p)].size();
    for (std::size_t j = 0; j < count; ++j) {
      const Option o = table_[id].options[static_cast<int>(p)][j];
      State child;
      child.nims = s.nims;
      child.ids = s.ids;
      child.ids.erase(child.ids.begin() + static_cast<std::ptrdiff_t>(i));
      if (o.is_nimber) {
        add_nimber(child, o.value);
      } else {
        auto nid = static_cast<std::uint32_t>(o.value);
        child.ids.insert(std::upper_bound(child.ids.begin(), child.ids.end(), nid), nid);
      }
      if (!wins(child, next)) {
        result = true;
        break;
      }
    }
  }

  for (std::size_t i = 0; i < s.nims.size() && !result; ++i) {
    if (i > 0 && s.nims[i] == s.nims[i - 1]) continue;
    for (std::uint64_t k = 0; k < s.nims[i]; ++k) {
      State child;
      child.ids = s.ids;
      child.nims = s.nims;
      child.nims.erase(child.nims.begin() + static_cast<std::ptrdiff_t>(i));
      add_nimber(child, k);
      if (!wins(child, next)) {
        result = true;
        break;
      }
    }
  }

  if (options_.memoize) memo_.emplace(std::move(key), result);
  return result;
}

bool Solver::wins_moving_first(const SumPosition& g, Player p) {
  nodes_ = 0;
  return wins(make_state(g), p);
}

OutcomeClass Solver::outcome(const SumPosition& g) {
  bool left = wins_moving_first(g, Player::Left);
  bool right = wins_moving_first(g, Player::Right);
  return outcome_from(left, right);
}

bool Solver::equals(const SumPosition& g, const SumPosition& h) {
  return outcome(g + negate(h)) == OutcomeClass::P;
}

bool Solver::is_equal_to_nimber(const SumPosition& g, std::uint64_t n) {
  return outcome(g + SumPosition(Component(Nimber(n)))) == OutcomeClass::P;
}

std::optional<SumMove> Solver::winning_move(const SumPosition& g, Player p) {
  const auto& comps = g.components();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (auto& option : comps[i].options(p)) {
      SumPosition child;
      for (std::size_t j = 0; j < comps.size(); ++j) {
        if (j != i) child.add(comps[j]);
      }
      child.add(option);
      if (!wins_moving_first(child, opponent(p))) return SumMove{i, option};
    }
  }
  return std::nullopt;
}

}  // namespace sstar
