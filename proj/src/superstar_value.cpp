#include "superstar_value.hpp"

#include <algorithm>

#include "error.hpp"
#include "nimber.hpp"

namespace sstar {

namespace {

void sort_unique(Superstar::Indices& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string join(const Superstar::Indices& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += to_string(Nimber(v[i]));
  }
  return out;
}

}  // namespace

Superstar::Superstar(Indices left, Indices right)
    : left_(std::move(left)), right_(std::move(right)) {
  if (left_.empty() && right_.empty()) {
    fail(ErrorCode::Precondition, "a superstar needs at least one option; use the nimber 0");
  }
  sort_unique(left_);
  sort_unique(right_);
}

bool Superstar::has_zero(Player p) const {
  const auto& s = side(p);
  return !s.empty() && s.front() == 0;
}

std::optional<std::uint64_t> Superstar::as_nimber() const {
  if (left_ != right_) return std::nullopt;
  for (std::size_t i = 0; i < left_.size(); ++i) {
    if (left_[i] != i) return std::nullopt;
  }
  return left_.size();
}

std::string Superstar::to_string() const {
  return "{" + join(left_) + "|" + join(right_) + "}";
}

}  // namespace sstar
