#include "lynslp/serialize.hpp"

#include <zlib.h>

#include <cstring>
#include <istream>
#include <ostream>
#include <vector>

namespace lynslp {

namespace {

// Section ids, written in this order.
enum : std::uint32_t {
  kSecRules = 1,
  kSecLengths = 2,
  kSecFingerprints = 3,
  kSecOrders = 4,
  kSecGrid = 5,
  kSecParents = 6,
};

constexpr std::uint32_t kSectionOrder[] = {kSecRules,  kSecLengths, kSecFingerprints,
                                           kSecOrders, kSecGrid,    kSecParents};

std::uint32_t crc_of(const std::vector<unsigned char>& data) {
  uLong crc = crc32(0L, Z_NULL, 0);
  std::size_t at = 0;
  while (at < data.size()) {
    const std::size_t chunk = std::min<std::size_t>(data.size() - at, 1u << 30);
    crc = crc32(crc, data.data() + at, static_cast<uInt>(chunk));
    at += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

// ---- little-endian writing ----------------------------------------------

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<unsigned char>(v >> (8 * k)));
}

void put_u64(std::vector<unsigned char>& out, std::uint64_t v) {
  for (int k = 0; k < 8; ++k) out.push_back(static_cast<unsigned char>(v >> (8 * k)));
}

// ---- bounds-checked reading ---------------------------------------------

struct Cursor {
  const unsigned char* at;
  const unsigned char* end;

  void need(std::size_t n) const {
    if (static_cast<std::size_t>(end - at) < n)
      throw SerializeError(SerializeError::Kind::malformed, "section payload too short");
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(at[k]) << (8 * k);
    at += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(at[k]) << (8 * k);
    at += 8;
    return v;
  }
  std::uint8_t u8() {
    need(1);
    return *at++;
  }
  bool done() const { return at == end; }
};

void read_exact(std::istream& in, void* dst, std::size_t n) {
  in.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n)
    throw SerializeError(SerializeError::Kind::truncated, "unexpected end of index image");
}

[[noreturn]] void malformed(const std::string& what) {
  throw SerializeError(SerializeError::Kind::malformed, what);
}

}  // namespace

std::uint64_t save_index(const SelfIndex& index, std::ostream& out) {
  const std::uint32_t g = index.slp.variable_count();

  std::vector<unsigned char> header;
  header.insert(header.end(), kIndexMagic, kIndexMagic + 8);
  put_u32(header, kIndexVersion);
  std::uint32_t sigma = 0;
  for (std::uint32_t v = 1; v <= g; ++v)
    sigma += index.slp.rules[v].kind == Rule::Kind::terminal;
  put_u32(header, sigma);
  put_u64(header, index.internal_length());
  put_u32(header, g);
  put_u32(header, index.slp.sentinel ? 1u : 0u);
  put_u64(header, index.fp.base);
  put_u64(header, index.seed);

  std::uint64_t written = header.size();
  out.write(reinterpret_cast<const char*>(header.data()),
            static_cast<std::streamsize>(header.size()));

  auto emit = [&](std::uint32_t id, const std::vector<unsigned char>& payload) {
    std::vector<unsigned char> head;
    put_u32(head, id);
    put_u64(head, payload.size());
    out.write(reinterpret_cast<const char*>(head.data()),
              static_cast<std::streamsize>(head.size()));
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size()));
    std::vector<unsigned char> tail;
    put_u32(tail, crc_of(payload));
    out.write(reinterpret_cast<const char*>(tail.data()),
              static_cast<std::streamsize>(tail.size()));
    written += head.size() + payload.size() + tail.size();
  };

  std::vector<unsigned char> payload;

  for (std::uint32_t v = 1; v <= g; ++v) {
    const Rule& rule = index.slp.rules[v];
    if (rule.kind == Rule::Kind::terminal) {
      payload.push_back(0);
      put_u32(payload, rule.symbol);
    } else {
      payload.push_back(1);
      put_u32(payload, rule.left);
      put_u32(payload, rule.right);
    }
  }
  emit(kSecRules, payload);
  payload.clear();

  for (std::uint32_t v = 1; v <= g; ++v) put_u64(payload, index.slp.lengths[v]);
  emit(kSecLengths, payload);
  payload.clear();

  for (std::uint32_t v = 1; v <= g; ++v) {
    put_u64(payload, index.fp.value[v]);
    put_u64(payload, index.fp.shift[v]);
  }
  emit(kSecFingerprints, payload);
  payload.clear();

  for (std::uint32_t r : index.orders.by_val) put_u32(payload, r);
  for (std::uint32_t r : index.orders.by_rval) put_u32(payload, r);
  emit(kSecOrders, payload);
  payload.clear();

  put_u32(payload, static_cast<std::uint32_t>(index.grid.xs.size()));
  for (std::size_t k = 0; k < index.grid.xs.size(); ++k) {
    put_u32(payload, index.grid.xs[k]);
    put_u32(payload, index.grid.ys[k]);
    put_u32(payload, index.grid.labels[k]);
  }
  emit(kSecGrid, payload);
  payload.clear();

  for (std::uint32_t v = 1; v <= g; ++v) {
    put_u32(payload, index.ag.host[v]);
    put_u64(payload, index.ag.host_offset[v]);
  }
  for (std::uint32_t v = 1; v <= g; ++v) {
    put_u32(payload, static_cast<std::uint32_t>(index.parents[v].size()));
    for (const ParentOccurrence& po : index.parents[v]) {
      put_u32(payload, po.parent);
      put_u64(payload, po.offset);
      put_u32(payload, po.index);
    }
  }
  emit(kSecParents, payload);

  out.flush();
  if (!out) throw SerializeError(SerializeError::Kind::truncated, "write failed");
  return written;
}

SelfIndex load_index(std::istream& in) {
  unsigned char magic[8];
  read_exact(in, magic, 8);
  if (std::memcmp(magic, kIndexMagic, 8) != 0)
    throw SerializeError(SerializeError::Kind::bad_magic, "not an index image");

  unsigned char rest[4 + 4 + 8 + 4 + 4 + 8 + 8];
  read_exact(in, rest, sizeof rest);
  Cursor hc{rest, rest + sizeof rest};
  const std::uint32_t version = hc.u32();
  if (version != kIndexVersion)
    throw SerializeError(SerializeError::Kind::bad_version,
                         "unsupported index version " + std::to_string(version));
  const std::uint32_t sigma = hc.u32();
  const std::uint64_t n_internal = hc.u64();
  const std::uint32_t g = hc.u32();
  const std::uint32_t flags = hc.u32();
  const std::uint64_t fp_base = hc.u64();
  const std::uint64_t fp_seed = hc.u64();
  if (g == 0) malformed("empty grammar");
  if ((flags & ~1u) != 0) malformed("unknown header flags");
  if (fp_base < 2 || fp_base > m61::kMod - 2) malformed("fingerprint base out of range");

  SelfIndex index;
  index.seed = fp_seed;
  index.slp.sentinel = (flags & 1) != 0;
  index.slp.start = g;
  index.fp.seed = fp_seed;
  index.fp.base = fp_base;

  std::vector<unsigned char> payload;
  for (std::uint32_t expected_id : kSectionOrder) {
    unsigned char shead[12];
    read_exact(in, shead, sizeof shead);
    Cursor sc{shead, shead + sizeof shead};
    const std::uint32_t id = sc.u32();
    const std::uint64_t len = sc.u64();
    if (id != expected_id) malformed("unexpected section id " + std::to_string(id));
    // Every section is linear in g (parents hold at most 2g occurrences), so
    // a length beyond this is corruption, not data; refuse before allocating.
    if (len > 64ull * g + 4096) malformed("implausible section length");
    payload.resize(len);
    if (len > 0) read_exact(in, payload.data(), len);
    unsigned char stail[4];
    read_exact(in, stail, 4);
    Cursor tc{stail, stail + 4};
    if (tc.u32() != crc_of(payload))
      throw SerializeError(SerializeError::Kind::bad_checksum,
                           "checksum mismatch in section " + std::to_string(id));

    Cursor c{payload.data(), payload.data() + payload.size()};
    switch (id) {
      case kSecRules: {
        index.slp.rules.assign(1, Rule{});
        std::uint32_t terminals = 0;
        for (std::uint32_t v = 1; v <= g; ++v) {
          const std::uint8_t tag = c.u8();
          if (tag == 0) {
            index.slp.rules.push_back(Rule::term(c.u32()));
            ++terminals;
          } else if (tag == 1) {
            const std::uint32_t l = c.u32(), r = c.u32();
            if (l == 0 || r == 0 || l >= v || r >= v) malformed("rule children out of order");
            index.slp.rules.push_back(Rule::bin(l, r));
          } else {
            malformed("unknown rule tag");
          }
        }
        if (terminals != sigma) malformed("terminal count does not match header");
        // The sentinel flag lives in the CRC-free header; tie it to the rules
        // section by checking the leftmost symbol of the start variable.
        std::uint32_t leftmost = g;
        while (index.slp.rules[leftmost].kind == Rule::Kind::binary)
          leftmost = index.slp.rules[leftmost].left;
        if (index.slp.sentinel != (index.slp.rules[leftmost].symbol == kSentinel))
          malformed("sentinel flag contradicts rules");
        break;
      }
      case kSecLengths: {
        index.slp.lengths.assign(1, 0);
        for (std::uint32_t v = 1; v <= g; ++v) {
          const std::uint64_t len_v = c.u64();
          const Rule& rule = index.slp.rules[v];
          const std::uint64_t expect =
              rule.kind == Rule::Kind::terminal
                  ? 1
                  : index.slp.lengths[rule.left] + index.slp.lengths[rule.right];
          if (len_v != expect) malformed("derived length mismatch");
          index.slp.lengths.push_back(len_v);
        }
        if (index.slp.lengths[g] != n_internal) malformed("text length does not match header");
        break;
      }
      case kSecFingerprints: {
        // Recomputing the table bottom-up pins it to the rules section and,
        // through shift[terminal] == base, to the CRC-free header base field.
        index.fp.value.assign(1, 0);
        index.fp.shift.assign(1, 1);
        for (std::uint32_t v = 1; v <= g; ++v) {
          const std::uint64_t value = c.u64();
          const std::uint64_t shift = c.u64();
          const Rule& rule = index.slp.rules[v];
          const bool ok =
              rule.kind == Rule::Kind::terminal
                  ? value == rule.symbol % m61::kMod && shift == fp_base
                  : value == m61::add(m61::mul(index.fp.value[rule.left],
                                               index.fp.shift[rule.right]),
                                      index.fp.value[rule.right]) &&
                        shift == m61::mul(index.fp.shift[rule.left],
                                          index.fp.shift[rule.right]);
          if (!ok) malformed("fingerprint table inconsistent");
          index.fp.value.push_back(value);
          index.fp.shift.push_back(shift);
        }
        break;
      }
      case kSecOrders: {
        auto read_order = [&](std::vector<std::uint32_t>& order) {
          order.clear();
          std::vector<std::uint8_t> seen(g + 1, 0);
          for (std::uint32_t k = 0; k < g; ++k) {
            const std::uint32_t v = c.u32();
            if (v == 0 || v > g || seen[v]) malformed("order is not a permutation");
            seen[v] = 1;
            order.push_back(v);
          }
        };
        read_order(index.orders.by_val);
        read_order(index.orders.by_rval);
        break;
      }
      case kSecGrid: {
        const std::uint32_t count = c.u32();
        index.grid.xs.clear();
        index.grid.ys.clear();
        index.grid.labels.clear();
        for (std::uint32_t k = 0; k < count; ++k) {
          const std::uint32_t x = c.u32(), y = c.u32(), label = c.u32();
          if (x >= g || y >= g) malformed("grid rank out of range");
          if (label == 0 || label > g ||
              index.slp.rules[label].kind != Rule::Kind::binary)
            malformed("grid label is not a binary rule");
          if (!index.grid.xs.empty() && x < index.grid.xs.back())
            malformed("grid points out of order");
          index.grid.xs.push_back(x);
          index.grid.ys.push_back(y);
          index.grid.labels.push_back(label);
        }
        break;
      }
      case kSecParents: {
        index.ag.host.assign(1, 0);
        index.ag.host_offset.assign(1, 0);
        for (std::uint32_t v = 1; v <= g; ++v) {
          const std::uint32_t host = c.u32();
          const std::uint64_t delta = c.u64();
          if (host == 0 || host > g) malformed("host out of range");
          if (delta + index.slp.lengths[v] > index.slp.lengths[host])
            malformed("host offset out of range");
          index.ag.host.push_back(host);
          index.ag.host_offset.push_back(delta);
        }
        index.parents.assign(g + 1, {});
        for (std::uint32_t v = 1; v <= g; ++v) {
          const std::uint32_t count = c.u32();
          for (std::uint32_t k = 0; k < count; ++k) {
            const std::uint32_t parent = c.u32();
            const std::uint64_t offset = c.u64();
            const std::uint32_t pos = c.u32();
            if (parent <= v || parent > g) malformed("parent out of range");
            if (offset + index.slp.lengths[v] > index.slp.lengths[parent])
              malformed("parent offset out of range");
            index.parents[v].push_back({parent, offset, pos});
          }
        }
        break;
      }
      default:
        malformed("unknown section");
    }
    if (!c.done()) malformed("trailing bytes in section " + std::to_string(id));
  }

  index.ag.exprs.assign(g + 1, {});
  rederive(index);
  return index;
}

}  // namespace lynslp
