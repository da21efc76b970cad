#include "paintcan.hpp"

#include <algorithm>
#include <cctype>

#include "error.hpp"

namespace sstar::paintcan {

bool playable_by(BrickColor c, Player p) {
  switch (c) {
    case BrickColor::Green: return true;
    case BrickColor::Blue: return p == Player::Left;
    case BrickColor::Red: return p == Player::Right;
    case BrickColor::Gray: return false;
  }
  return false;
}

bool has_paint_can(const Stack& s) {
  return std::any_of(s.begin(), s.end(), [](BrickColor c) { return c != BrickColor::Green; });
}

std::vector<BrickMove> legal_moves(const Position& pos, Player p) {
  std::vector<BrickMove> out;
  for (std::size_t s = 0; s < pos.stacks.size(); ++s) {
    for (std::size_t i = 0; i < pos.stacks[s].size(); ++i) {
      if (playable_by(pos.stacks[s][i], p)) out.push_back({s, i});
    }
  }
  return out;
}

Position apply_move(const Position& pos, Player p, BrickMove move) {
  if (move.stack >= pos.stacks.size() || move.brick >= pos.stacks[move.stack].size() ||
      !playable_by(pos.stacks[move.stack][move.brick], p)) {
    fail(ErrorCode::IllegalMove, "illegal-move: brick " + std::to_string(move.brick) +
                                     " of stack " + std::to_string(move.stack) +
                                     " is not playable by " + std::string(to_string(p)));
  }
  Position next = pos;
  Stack& s = next.stacks[move.stack];
  const bool spill = has_paint_can(s);
  s.resize(move.brick);
  if (spill) std::fill(s.begin(), s.end(), BrickColor::Green);
  if (s.empty()) next.stacks.erase(next.stacks.begin() + static_cast<std::ptrdiff_t>(move.stack));
  return next;
}

StarTerm stack_to_superstar(const Stack& s) {
  if (!has_paint_can(s)) return Nimber(s.size());
  Superstar::Indices left, right;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (playable_by(s[i], Player::Left)) left.push_back(i);
    if (playable_by(s[i], Player::Right)) right.push_back(i);
  }
  if (left.empty() && right.empty()) return Nimber(0);
  Superstar star(std::move(left), std::move(right));
  if (auto n = star.as_nimber()) return Nimber(*n);
  return star;
}

Stack superstar_to_stack(const StarTerm& t) {
  if (const auto* n = std::get_if<Nimber>(&t)) return Stack(n->value, BrickColor::Green);
  const auto& s = std::get<Superstar>(t);
  std::uint64_t height = 0;
  if (!s.left().empty()) height = std::max(height, s.left().back() + 1);
  if (!s.right().empty()) height = std::max(height, s.right().back() + 1);
  Stack out(height, BrickColor::Gray);
  for (auto i : s.left()) out[i] = BrickColor::Blue;
  for (auto i : s.right()) {
    out[i] = out[i] == BrickColor::Blue ? BrickColor::Green : BrickColor::Red;
  }
  return out;
}

std::vector<StarTerm> position_terms(const Position& pos) {
  std::vector<StarTerm> out;
  for (const auto& s : pos.stacks) out.push_back(stack_to_superstar(s));
  return out;
}

SumPosition position_value(const Position& pos) { return to_sum(position_terms(pos)); }

namespace {

class StackGame final : public RulesetGame {
 public:
  explicit StackGame(Stack s) : stack_(std::move(s)) {}

  std::vector<Component> options(Player p) const override {
    Position pos{{stack_}};
    std::vector<Component> out;
    for (const auto& m : legal_moves(pos, p)) {
      Position next = apply_move(pos, p, m);
      if (next.stacks.empty()) {
        out.emplace_back(Nimber(0));
      } else {
        out.emplace_back(stack_game(next.stacks.front()));
      }
    }
    return out;
  }

  std::string key() const override { return "paintcan:" + to_text(stack_); }

 private:
  Stack stack_;
};

}  // namespace

std::shared_ptr<const RulesetGame> stack_game(Stack s) {
  return std::make_shared<StackGame>(std::move(s));
}

Position parse_position(std::string_view text) {
  Position pos;
  std::string clean;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) clean += ch;
  }
  if (clean.empty()) return pos;
  Stack current;
  auto finish = [&]() {
    if (current.empty()) fail(ErrorCode::Parse, "paint can: empty stack");
    if (current.back() == BrickColor::Gray) {
      fail(ErrorCode::Parse, "paint can: trailing Gray bricks encode nothing");
    }
    pos.stacks.push_back(std::move(current));
    current.clear();
  };
  for (char ch : clean) {
    switch (std::toupper(static_cast<unsigned char>(ch))) {
      case 'B': current.push_back(BrickColor::Blue); break;
      case 'R': current.push_back(BrickColor::Red); break;
      case 'G': current.push_back(BrickColor::Green); break;
      case 'Y': current.push_back(BrickColor::Gray); break;
      case '/': finish(); break;
      default: fail(ErrorCode::Parse, std::string("paint can: unknown brick '") + ch + "'");
    }
  }
  finish();
  return pos;
}

std::string to_text(const Stack& s) {
  std::string out;
  for (BrickColor c : s) out += static_cast<char>(c);
  return out;
}

std::string to_text(const Position& pos) {
  std::string out;
  for (std::size_t i = 0; i < pos.stacks.size(); ++i) {
    if (i > 0) out += '/';
    out += to_text(pos.stacks[i]);
  }
  return out;
}

}  // namespace sstar::paintcan
