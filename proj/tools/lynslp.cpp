// Command-line front end for the Lyndon-grammar self-index library.
//
// Exit codes: 0 success, 1 usage error, 2 I/O error, 3 verification failure.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lynslp/access.hpp"
#include "lynslp/grammar.hpp"
#include "lynslp/index.hpp"
#include "lynslp/lyndon.hpp"
#include "lynslp/oracle.hpp"
#include "lynslp/serialize.hpp"
#include "lynslp/text.hpp"

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return std::move(buf).str();
}

lynslp::SelfIndex load_index_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return lynslp::load_index(in);
}

std::string escape(std::string_view raw) {
  std::string out;
  for (unsigned char c : raw) {
    if (c == '\\') {
      out += "\\\\";
    } else if (c >= 0x20 && c < 0x7f) {
      out += static_cast<char>(c);
    } else {
      static const char* hex = "0123456789abcdef";
      out += "\\x";
      out += hex[c >> 4];
      out += hex[c & 0xf];
    }
  }
  return out;
}

// ---- build ----------------------------------------------------------------

int run_build(const std::string& input, const std::string& output, std::uint64_t seed) {
  const std::string bytes = read_file(input);
  if (bytes.empty()) {
    std::cerr << "lynslp: " << input << " is empty\n";
    return 1;
  }
  const lynslp::Text text = lynslp::ranks_from_bytes(bytes);
  const lynslp::SelfIndex index = lynslp::build_index(text, seed);
  std::ofstream out(output, std::ios::binary);
  if (!out) throw IoError("cannot open " + output + " for writing");
  const std::uint64_t written = lynslp::save_index(index, out);
  if (!out) throw IoError("cannot write " + output);
  std::cerr << "indexed " << index.original_length() << " bytes into "
            << index.slp.variable_count() << " variables (" << written << " bytes on disk)\n";
  return 0;
}

// ---- locate ----------------------------------------------------------------

int run_locate(const std::string& index_path, std::string pattern, bool count_only) {
  if (pattern.empty()) {
    std::cerr << "lynslp: empty pattern\n";
    return 1;
  }
  const lynslp::SelfIndex index = load_index_file(index_path);
  const lynslp::Text ranks = lynslp::ranks_from_bytes(pattern);
  const std::vector<std::uint64_t> hits = lynslp::locate(index, ranks);
  if (count_only) {
    std::cout << hits.size() << '\n';
  } else {
    for (std::uint64_t p : hits) std::cout << p << '\n';
  }
  return 0;
}

// ---- extract ----------------------------------------------------------------

int run_extract(const std::string& index_path, std::uint64_t from, std::uint64_t to) {
  const lynslp::SelfIndex index = load_index_file(index_path);
  if (from < 1 || to > index.original_length() || from > to) {
    std::cerr << "lynslp: range [" << from << ", " << to << "] is outside the text (1.."
              << index.original_length() << ")\n";
    return 1;
  }
  const std::string bytes = lynslp::bytes_from_ranks(lynslp::extract_original(index, from, to));
  std::cout.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  return 0;
}

// ---- factorize ----------------------------------------------------------------

int run_factorize(const std::string& literal, const std::string& input) {
  const std::string bytes = input.empty() ? literal : read_file(input);
  if (bytes.empty()) {
    std::cerr << "lynslp: nothing to factorize\n";
    return 1;
  }
  const lynslp::Text text = lynslp::ranks_from_bytes(bytes);
  const lynslp::LyndonFactorization f = lynslp::duval_factorize(text);
  for (std::size_t k = 0; k < f.factors.size(); ++k) {
    const lynslp::ComposedFactor& cf = f.factors[k];
    std::cout << k + 1 << '\t' << "start=" << cf.start + 1 << '\t' << "len=" << cf.length << '\t'
              << "exp=" << cf.exponent << '\t'
              << escape(std::string_view(bytes).substr(cf.start, cf.length)) << '\n';
  }
  std::cout << "lambda\t" << f.lambda << '\n';
  std::cout << "significant";
  for (std::size_t start : lynslp::significant_suffixes(text, f)) std::cout << ' ' << start;
  std::cout << '\n';
  return 0;
}

// ---- lyndon-array ----------------------------------------------------------------

int run_lyndon_array(const std::string& index_path, std::uint64_t position, bool all) {
  const lynslp::SelfIndex index = load_index_file(index_path);
  const std::uint64_t n = index.original_length();
  if (all) {
    for (std::uint64_t i = 1; i <= n; ++i)
      std::cout << i << '\t' << lynslp::lyndon_array_original(index, i) << '\n';
    return 0;
  }
  if (position < 1 || position > n) {
    std::cerr << "lynslp: position " << position << " is outside the text (1.." << n << ")\n";
    return 1;
  }
  std::cout << lynslp::lyndon_array_original(index, position) << '\n';
  return 0;
}

// ---- stats ----------------------------------------------------------------

int run_stats(const std::string& input, std::uint64_t seed) {
  const std::string bytes = read_file(input);
  if (bytes.empty()) {
    std::cerr << "lynslp: " << input << " is empty\n";
    return 1;
  }
  const lynslp::Text text = lynslp::ranks_from_bytes(bytes);
  const lynslp::SelfIndex index = lynslp::build_index(text, seed);
  const lynslp::LyndonSlp& slp = index.slp;

  std::uint32_t sigma = 0;
  for (std::uint32_t v = 1; v <= slp.variable_count(); ++v)
    sigma += slp.rules[v].kind == lynslp::Rule::Kind::terminal;

  const lynslp::ReducedGrammar bench = lynslp::reduce_r1(slp, true);
  std::cout << "n\t" << index.original_length() << '\n'
            << "sentinel\t" << (slp.sentinel ? 1 : 0) << '\n'
            << "distinct_symbols\t" << sigma << '\n'
            << "variables\t" << slp.variable_count() << '\n'
            << "slp_size\t" << lynslp::slp_size(slp) << '\n'
            << "height\t" << lynslp::derivation_height(slp) << '\n'
            << "grid_points\t" << index.grid.xs.size() << '\n'
            << "ag_rules\t" << index.ag.rule_count() << '\n'
            << "ag_size\t" << index.ag.size() << '\n'
            << "ag_rules_no_terminals\t" << bench.ag.rule_count() << '\n'
            << "ag_size_no_terminals\t" << bench.ag.size() << '\n';

  // derived-string lengths, bucketed by powers of two
  std::vector<std::uint64_t> buckets;
  for (std::uint32_t v = 1; v <= slp.variable_count(); ++v) {
    std::size_t b = 0;
    while ((std::uint64_t{1} << (b + 1)) <= slp.lengths[v]) ++b;
    if (buckets.size() <= b) buckets.resize(b + 1, 0);
    ++buckets[b];
  }
  for (std::size_t b = 0; b < buckets.size(); ++b)
    std::cout << "val_len_" << (std::uint64_t{1} << b) << "_to_"
              << ((std::uint64_t{1} << (b + 1)) - 1) << '\t' << buckets[b] << '\n';
  return 0;
}

// ---- verify ----------------------------------------------------------------

int run_verify(const std::string& input, std::uint64_t seed, std::size_t samples) {
  const std::string bytes = read_file(input);
  if (bytes.empty()) {
    std::cerr << "lynslp: " << input << " is empty\n";
    return 1;
  }

  // All checks run on a bounded prefix window so the reference
  // implementations stay within their input caps.
  const std::size_t window = std::min(bytes.size(), lynslp::oracle::kMaxInput);
  const lynslp::Text text = lynslp::ranks_from_bytes(std::string_view(bytes).substr(0, window));
  const lynslp::SelfIndex index = lynslp::build_index(text, seed);
  std::mt19937_64 rng(seed);
  int failures = 0;
  auto report = [&](const std::string& what, bool ok) {
    std::cout << (ok ? "ok" : "FAIL") << '\t' << what << '\n';
    failures += !ok;
  };

  report("grammar invariants", lynslp::validate(index.slp).empty());

  {
    std::stringstream buf;
    lynslp::save_index(index, buf);
    const lynslp::SelfIndex back = lynslp::load_index(buf);
    report("image round trip",
           back.slp == index.slp && back.orders.by_val == index.orders.by_val &&
               back.orders.by_rval == index.orders.by_rval && back.grid.xs == index.grid.xs &&
               back.grid.ys == index.grid.ys && back.grid.labels == index.grid.labels &&
               back.parents == index.parents && back.ag.host == index.ag.host &&
               back.ag.host_offset == index.ag.host_offset);
  }

  {
    const std::size_t fac_window = std::min<std::size_t>(window, 512);
    const lynslp::SymbolSpan head = lynslp::SymbolSpan(text).first(fac_window);
    const lynslp::LyndonFactorization got = lynslp::duval_factorize(head);
    const lynslp::LyndonFactorization want = lynslp::oracle::naive_lyndon_factorization(head);
    report("factorization vs reference",
           got.factors == want.factors && got.lambda == want.lambda);
  }

  {
    bool ok = true;
    const std::size_t arr_window = std::min<std::size_t>(window, 256);
    const lynslp::SymbolSpan head = lynslp::SymbolSpan(text).first(arr_window);
    const std::vector<std::uint64_t> want = lynslp::oracle::naive_lyndon_array(head);
    const lynslp::SelfIndex head_index = lynslp::build_index(head, seed);
    for (std::size_t i = 1; i <= arr_window && ok; ++i)
      ok = lynslp::lyndon_array_original(head_index, i) == want[i - 1];
    report("lyndon array vs reference", ok);
  }

  {
    bool ok = true;
    std::uniform_int_distribution<std::size_t> pos_dist(0, window - 1);
    for (std::size_t s = 0; s < samples && ok; ++s) {
      std::size_t i = pos_dist(rng);
      std::uniform_int_distribution<std::size_t> len_dist(1, std::min<std::size_t>(64, window - i));
      const std::size_t len = len_dist(rng);
      lynslp::Text pattern(text.begin() + static_cast<std::ptrdiff_t>(i),
                           text.begin() + static_cast<std::ptrdiff_t>(i + len));
      if (s % 5 == 4)  // a fifth of the samples are mutated, mostly absent
        pattern[pattern.size() / 2] = 1 + static_cast<lynslp::Symbol>(rng() % 256);
      ok = lynslp::locate(index, pattern) == lynslp::oracle::naive_locate(text, pattern);
    }
    report("locate vs reference", ok);
  }

  {
    bool ok = true;
    std::uniform_int_distribution<std::size_t> pos_dist(1, window);
    for (std::size_t s = 0; s < samples && ok; ++s) {
      std::size_t i = pos_dist(rng), j = pos_dist(rng);
      if (i > j) std::swap(i, j);
      j = std::min(j, i + 256);
      const lynslp::Text got = lynslp::extract_original(index, i, j);
      ok = std::equal(got.begin(), got.end(), text.begin() + static_cast<std::ptrdiff_t>(i - 1),
                      text.begin() + static_cast<std::ptrdiff_t>(j));
    }
    report("extract vs text", ok);
  }

  if (failures > 0) {
    std::cerr << "lynslp: " << failures << " verification check(s) failed\n";
    return 3;
  }
  if (window < bytes.size())
    std::cerr << "note: checks ran on the first " << window << " of " << bytes.size()
              << " bytes\n";
  return 0;
}

// ---- bench ----------------------------------------------------------------

int run_bench(const std::vector<std::string>& inputs, const std::string& format,
              std::uint64_t seed) {
  const bool md = format == "md";
  if (md) {
    std::cout << "| input | n | g | slp size | ag size | build ms | image bytes |\n"
              << "|---|---:|---:|---:|---:|---:|---:|\n";
  } else {
    std::cout << "input\tn\tg\tslp_size\tag_size\tbuild_ms\timage_bytes\n";
  }
  for (const std::string& path : inputs) {
    const std::string bytes = read_file(path);
    if (bytes.empty()) {
      std::cerr << "lynslp: " << path << " is empty, skipped\n";
      continue;
    }
    const lynslp::Text text = lynslp::ranks_from_bytes(bytes);
    const auto t0 = std::chrono::steady_clock::now();
    const lynslp::SelfIndex index = lynslp::build_index(text, seed);
    const auto t1 = std::chrono::steady_clock::now();
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    const std::uint64_t ag_size = lynslp::reduce_r1(index.slp, true).ag.size();
    std::ostringstream image;
    const std::uint64_t image_bytes = lynslp::save_index(index, image);
    if (md) {
      std::cout << "| " << path << " | " << index.original_length() << " | "
                << index.slp.variable_count() << " | " << lynslp::slp_size(index.slp) << " | "
                << ag_size << " | " << ms << " | " << image_bytes << " |\n";
    } else {
      std::cout << path << '\t' << index.original_length() << '\t'
                << index.slp.variable_count() << '\t' << lynslp::slp_size(index.slp) << '\t'
                << ag_size << '\t' << ms << '\t' << image_bytes << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grammar-compressed self-index over Lyndon-word grammars"};
  app.require_subcommand(1);

  std::string input, output, index_path, pattern, pattern_file, format = "tsv";
  std::vector<std::string> inputs;
  std::uint64_t seed = lynslp::kDefaultSeed;
  std::uint64_t from = 0, to = 0, position = 0;
  std::size_t samples = 200;
  bool count_only = false, trim = false, all = false;

  CLI::App* build = app.add_subcommand("build", "build an index image from a file");
  build->add_option("-i,--input", input, "text file to index")->required();
  build->add_option("-o,--output", output, "index image to write")->required();
  build->add_option("--seed", seed, "fingerprint seed");

  CLI::App* loc = app.add_subcommand("locate", "list all occurrences of a pattern");
  loc->add_option("-x,--index", index_path, "index image")->required();
  loc->add_option("-p,--pattern", pattern, "pattern (raw bytes)");
  loc->add_option("-P,--pattern-file", pattern_file, "file holding the pattern");
  loc->add_flag("--trim", trim, "strip one trailing newline from the pattern");
  loc->add_flag("-c,--count-only", count_only, "print only the number of occurrences");

  CLI::App* ext = app.add_subcommand("extract", "write T[from..to] to stdout");
  ext->add_option("-x,--index", index_path, "index image")->required();
  ext->add_option("--from", from, "1-based start position")->required();
  ext->add_option("--to", to, "1-based end position, inclusive")->required();

  CLI::App* fac = app.add_subcommand("factorize",
                                     "Lyndon factorization with exponents, the first "
                                     "significant block, and the significant suffix starts");
  fac->add_option("-p,--pattern", pattern, "literal input (raw bytes)");
  fac->add_option("-i,--input", input, "input file");

  CLI::App* arr = app.add_subcommand("lyndon-array",
                                     "longest Lyndon word starting at a position");
  arr->add_option("-x,--index", index_path, "index image")->required();
  arr->add_option("-i,--position", position, "1-based position");
  arr->add_flag("--all", all, "print every entry");

  CLI::App* st = app.add_subcommand("stats", "grammar statistics for a file");
  st->add_option("-i,--input", input, "text file")->required();
  st->add_option("--seed", seed, "fingerprint seed");

  CLI::App* ver = app.add_subcommand("verify",
                                     "check the index against reference implementations "
                                     "on a bounded prefix window");
  ver->add_option("-i,--input", input, "text file")->required();
  ver->add_option("--samples", samples, "random queries per check");
  ver->add_option("--seed", seed, "fingerprint and sampling seed");

  CLI::App* ben = app.add_subcommand("bench", "build-time and size figures per input");
  ben->add_option("inputs", inputs, "text files")->required();
  ben->add_option("--format", format, "tsv or md")->check(CLI::IsMember({"tsv", "md"}));
  ben->add_option("--seed", seed, "fingerprint seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*build) return run_build(input, output, seed);
    if (*loc) {
      if (pattern.empty() == pattern_file.empty()) {
        std::cerr << "lynslp: locate needs exactly one of --pattern / --pattern-file\n";
        return 1;
      }
      std::string p = pattern_file.empty() ? pattern : read_file(pattern_file);
      if (trim && !p.empty() && p.back() == '\n') {
        p.pop_back();
        if (!p.empty() && p.back() == '\r') p.pop_back();
      }
      return run_locate(index_path, std::move(p), count_only);
    }
    if (*ext) return run_extract(index_path, from, to);
    if (*fac) {
      if (pattern.empty() == input.empty()) {
        std::cerr << "lynslp: factorize needs exactly one of --pattern / --input\n";
        return 1;
      }
      return run_factorize(pattern, input);
    }
    if (*arr) {
      if (all == (position != 0)) {
        std::cerr << "lynslp: lyndon-array needs exactly one of --position / --all\n";
        return 1;
      }
      return run_lyndon_array(index_path, position, all);
    }
    if (*st) return run_stats(input, seed);
    if (*ver) return run_verify(input, seed, samples);
    if (*ben) return run_bench(inputs, format, seed);
  } catch (const IoError& e) {
    std::cerr << "lynslp: " << e.what() << '\n';
    return 2;
  } catch (const lynslp::SerializeError& e) {
    std::cerr << "lynslp: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "lynslp: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
