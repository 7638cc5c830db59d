#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "lynslp/index.hpp"

namespace lynslp {

class SerializeError : public std::runtime_error {
 public:
  enum class Kind { bad_magic, bad_version, bad_checksum, truncated, malformed };

  SerializeError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline constexpr char kIndexMagic[8] = {'L', 'Y', 'N', 'S', 'L', 'P', '0', '1'};
inline constexpr std::uint32_t kIndexVersion = 1;

/// Writes the index image; returns the number of bytes written. The image is
/// deterministic for a given build seed.
std::uint64_t save_index(const SelfIndex& index, std::ostream& out);

/// Reads an index image, validating magic, version and per-section CRC32s.
/// Throws SerializeError with a kind telling bad magic, version mismatch,
/// checksum failure and truncation apart.
SelfIndex load_index(std::istream& in);

}  // namespace lynslp
