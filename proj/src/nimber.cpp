#include "nimber.hpp"

#include <algorithm>

namespace sstar {

std::vector<Nimber> nimber_options(Nimber n) {
  std::vector<Nimber> out;
  out.reserve(n.value);
  for (std::uint64_t i = 0; i < n.value; ++i) out.emplace_back(i);
  return out;
}

Nimber nim_sum(std::span<const Nimber> values) {
  std::uint64_t acc = 0;
  for (Nimber v : values) acc ^= v.value;
  return Nimber(acc);
}

std::uint64_t mex(std::span<const std::uint64_t> values) {
  // Only values below values.size() can block the answer.
  std::vector<bool> seen(values.size() + 1, false);
  for (std::uint64_t v : values) {
    if (v < seen.size()) seen[v] = true;
  }
  return static_cast<std::uint64_t>(
      std::find(seen.begin(), seen.end(), false) - seen.begin());
}

std::string to_string(Nimber n) {
  return n.value == 0 ? std::string("0") : "*" + std::to_string(n.value);
}

}  // namespace sstar
