#include "blackout.hpp"

#include <algorithm>

#include "error.hpp"

namespace sstar::blackout {

std::string_view role_name(Player p) { return p == kAllOff ? "AllOff" : "OneOn"; }

void Position::validate() const {
  for (Player p : {kAllOff, kOneOn}) {
    for (const auto& r : rows(p)) {
      if (r.size() != lights.size()) {
        fail(ErrorCode::Parse, "blackout: row width " + std::to_string(r.size()) +
                                   " differs from light count " + std::to_string(lights.size()));
      }
      if (r.none()) fail(ErrorCode::Parse, "blackout: every switch must control a light");
    }
  }
}

std::vector<Move> moves_for(const Position& pos, Player side) {
  std::vector<Move> out;
  const auto& rows = pos.rows(side);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.push_back({Move::Kind::Switch, side, r, false});
    out.push_back({Move::Kind::Switch, side, r, true});
  }
  if (side == kOneOn && rows.empty() && pos.lights.any() && pos.pass_budget > 0) {
    out.push_back(Move::pass());
  }
  return out;
}

std::vector<Move> legal_moves(const Position& pos) { return moves_for(pos, pos.to_move); }

namespace {

Position play(const Position& pos, const Move& move) {
  Position next = pos;
  if (move.kind == Move::Kind::Pass) {
    --next.pass_budget;
  } else {
    auto& rows = next.rows(move.side);
    if (move.action) next.lights ^= rows[move.row];
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(move.row));
  }
  next.to_move = opponent(move.side);
  return next;
}

}  // namespace

Position apply_move(const Position& pos, const Move& move) {
  const auto legal = legal_moves(pos);
  if (std::find(legal.begin(), legal.end(), move) == legal.end()) {
    fail(ErrorCode::IllegalMove, "illegal-move: not a legal move for " +
                                     std::string(role_name(pos.to_move)));
  }
  return play(pos, move);
}

std::optional<Player> loser_if_stuck(const Position& pos) {
  if (legal_moves(pos).empty()) return pos.to_move;
  return std::nullopt;
}

std::optional<std::vector<std::size_t>> gf2_solve(const Bits& target, std::span<const Bits> rows) {
  const std::size_t width = target.size();
  struct Basis {
    Bits vec;
    Bits combo;
  };
  std::vector<Basis> basis;
  std::vector<std::int64_t> pivot_of(width, -1);

  // Each basis vector is keyed by its lowest set bit, so reduction by lowest
  // bit strictly advances and terminates.
  auto reduce = [&](Bits& vec, Bits& combo) {
    for (auto b = vec.find_first(); b != Bits::npos; b = vec.find_first()) {
      if (pivot_of[b] < 0) return b;
      const Basis& e = basis[static_cast<std::size_t>(pivot_of[b])];
      vec ^= e.vec;
      combo ^= e.combo;
    }
    return Bits::npos;
  };

  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != width) fail(ErrorCode::Precondition, "gf2_solve: row width mismatch");
    Bits vec = rows[i];
    Bits combo(rows.size());
    combo.set(i);
    auto pivot = reduce(vec, combo);
    if (pivot != Bits::npos) {
      pivot_of[pivot] = static_cast<std::int64_t>(basis.size());
      basis.push_back({std::move(vec), std::move(combo)});
    }
  }

  Bits vec = target;
  Bits combo(rows.size());
  if (reduce(vec, combo) != Bits::npos) return std::nullopt;
  std::vector<std::size_t> out;
  for (auto i = combo.find_first(); i != Bits::npos; i = combo.find_next(i)) out.push_back(i);
  return out;
}

// ------------------------------------------------------------------- solver

namespace {

void append_bits(std::string& key, const Bits& b) {
  std::vector<std::uint64_t> blocks(b.num_blocks());
  boost::to_block_range(b, blocks.begin());
  key.append(reinterpret_cast<const char*>(blocks.data()), blocks.size() * sizeof(std::uint64_t));
}

std::string memo_key(const Position& pos) {
  std::string key;
  key += pos.to_move == kAllOff ? 'A' : 'O';
  key.append(reinterpret_cast<const char*>(&pos.pass_budget), sizeof(pos.pass_budget));
  append_bits(key, pos.lights);
  for (Player p : {kAllOff, kOneOn}) {
    std::vector<Bits> rows = pos.rows(p);
    std::sort(rows.begin(), rows.end());
    key += '|';
    key += std::to_string(rows.size());
    for (const auto& r : rows) append_bits(key, r);
  }
  return key;
}

}  // namespace

// Once OneOn is out of switches it can only pass while lights are on and
// budget remains. AllOff, to move with r switches and budget b left, wins iff
// r > b (OneOn runs out of passes first) or some subset of its switches
// clears the lights before it runs out.
bool Solver::endgame(const Position& pos) const {
  Position p = pos;
  if (p.to_move == kOneOn) {
    if (p.lights.none() || p.pass_budget == 0) return false;
    --p.pass_budget;
    p.to_move = kAllOff;
    return !endgame(p);
  }
  const std::size_t r = p.all_off.size();
  if (r == 0) return false;
  if (r > p.pass_budget) return true;
  return gf2_solve(p.lights, p.all_off).has_value();
}

bool Solver::mover_wins(const Position& pos) {
  if (options_.endgame_shortcut && pos.one_on.empty()) return endgame(pos);

  std::string key = memo_key(pos);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  if (++nodes_ > options_.node_budget) {
    fail(ErrorCode::BudgetExceeded, "budget-exceeded: Blackout search exceeded " +
                                        std::to_string(options_.node_budget) + " nodes");
  }

  bool result = false;
  const auto& rows = pos.rows(pos.to_move);
  for (const auto& m : legal_moves(pos)) {
    // Identical rows lead to identical positions.
    if (m.kind == Move::Kind::Switch &&
        std::find(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(m.row), rows[m.row]) !=
            rows.begin() + static_cast<std::ptrdiff_t>(m.row)) {
      continue;
    }
    if (!mover_wins(play(pos, m))) {
      result = true;
      break;
    }
  }
  memo_.emplace(std::move(key), result);
  return result;
}

Player Solver::solve(const Position& pos) {
  pos.validate();
  nodes_ = 0;
  return mover_wins(pos) ? pos.to_move : opponent(pos.to_move);
}

std::optional<Move> Solver::winning_move(const Position& pos) {
  pos.validate();
  nodes_ = 0;
  for (const auto& m : legal_moves(pos)) {
    if (!mover_wins(play(pos, m))) return m;
  }
  return std::nullopt;
}

// ------------------------------------------------------------------- codecs

Bits parse_bits(std::string_view text) {
  Bits out(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      out.set(i);
    } else if (text[i] != '0') {
      fail(ErrorCode::Parse, "blackout: bit strings may only contain 0 and 1");
    }
  }
  return out;
}

std::string to_string(const Bits& bits) {
  std::string out(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits.test(i)) out[i] = '1';
  }
  return out;
}

namespace {

class BlackoutGame final : public RulesetGame {
 public:
  explicit BlackoutGame(Position pos) : pos_(std::move(pos)) {}

  std::vector<Component> options(Player p) const override {
    std::vector<Component> out;
    for (const auto& m : moves_for(pos_, p)) {
      Position next = play(pos_, m);
      next.to_move = kAllOff;  // turn is not part of a component's identity
      out.emplace_back(as_component(next));
    }
    return out;
  }

  std::string key() const override {
    std::string k = "blackout:" + to_string(pos_.lights) + ":" + std::to_string(pos_.pass_budget);
    for (Player p : {kAllOff, kOneOn}) {
      std::vector<std::string> rows;
      for (const auto& r : pos_.rows(p)) rows.push_back(to_string(r));
      std::sort(rows.begin(), rows.end());
      k += p == kAllOff ? ":A" : ":O";
      for (const auto& r : rows) k += "," + r;
    }
    return k;
  }

 private:
  Position pos_;
};

}  // namespace

std::shared_ptr<const RulesetGame> as_component(const Position& pos) {
  Position p = pos;
  p.to_move = kAllOff;
  return std::make_shared<BlackoutGame>(std::move(p));
}

}  // namespace sstar::blackout
