#include "lynslp/text.hpp"

#include <stdexcept>

namespace lynslp {

Text ranks_from_bytes(std::string_view bytes) {
  Text out;
  out.reserve(bytes.size());
  for (unsigned char c : bytes) out.push_back(static_cast<Symbol>(c) + 1);
  return out;
}

std::string bytes_from_ranks(SymbolSpan ranks) {
  std::string out;
  out.reserve(ranks.size());
  for (Symbol r : ranks) {
    if (r < 1 || r > 256) throw std::invalid_argument("rank outside byte alphabet");
    out.push_back(static_cast<char>(r - 1));
  }
  return out;
}

}  // namespace lynslp
