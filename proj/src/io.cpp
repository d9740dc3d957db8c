#include "radiosync/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace radiosync {

std::string format_double(double value) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, value);
    if (std::strtod(buf, nullptr) == value) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

const char* status_name(VerifyStatus status) {
  switch (status) {
    case VerifyStatus::unverified: return "unverified";
    case VerifyStatus::verified_exhaustive: return "exhaustive";
    case VerifyStatus::verified_sampled: return "sampled";
  }
  return "unverified";
}

VerifyStatus status_from_name(const std::string& name, int line) {
  if (name == "unverified") return VerifyStatus::unverified;
  if (name == "exhaustive") return VerifyStatus::verified_exhaustive;
  if (name == "sampled") return VerifyStatus::verified_sampled;
  throw FileParseError(line, "unknown verification status '" + name + "'");
}

struct LineReader {
  std::istream& in;
  int line = 0;
  bool next(std::string& out) {
    if (!std::getline(in, out)) return false;
    ++line;
    if (!out.empty() && out.back() == '\r') out.pop_back();
    return true;
  }
};

using KeyValues = std::map<std::string, std::string>;

void parse_header_line(const std::string& line, KeyValues& kv, int line_number) {
  std::size_t start = 1;
  while (start < line.size() && line[start] == ' ') ++start;
  const std::size_t eq = line.find('=', start);
  if (eq == std::string::npos)
    throw FileParseError(line_number, "header line is not '# key=value'");
  const std::string key = line.substr(start, eq - start);
  if (key.empty()) throw FileParseError(line_number, "empty header key");
  if (kv.count(key)) throw FileParseError(line_number, "duplicate header key '" + key + "'");
  kv[key] = line.substr(eq + 1);
}

const std::string& require_key(const KeyValues& kv, const std::string& key, int line) {
  auto it = kv.find(key);
  if (it == kv.end()) throw FileParseError(line, "missing header key '" + key + "'");
  return it->second;
}

long long parse_ll(const std::string& text, int line) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw FileParseError(line, "expected an integer, got '" + text + "'");
  }
  if (used != text.size())
    throw FileParseError(line, "trailing characters after integer '" + text + "'");
  return value;
}

std::uint64_t parse_u64(const std::string& text, int line) {
  const long long v = parse_ll(text, line);
  if (v < 0) throw FileParseError(line, "expected a nonnegative integer");
  return static_cast<std::uint64_t>(v);
}

// Seeds occupy the full 64-bit range, so they get their own parser.
std::uint64_t parse_seed(const std::string& text, int line) {
  std::size_t used = 0;
  std::uint64_t value = 0;
  try {
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    throw FileParseError(line, "expected a seed, got '" + text + "'");
  }
  if (used != text.size()) throw FileParseError(line, "trailing characters after seed");
  return value;
}

double parse_double(const std::string& text, int line) {
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw FileParseError(line, "expected a number, got '" + text + "'");
  }
  if (used != text.size()) throw FileParseError(line, "trailing characters after number");
  return value;
}

void write_rows(std::ostream& out, const std::vector<Schedule>& schedules) {
  for (const Schedule& s : schedules) {
    std::string row(s.length(), '0');
    for (std::size_t j = 0; j < s.length(); ++j)
      if (s.raw()[j]) row[j] = '1';
    out << row << '\n';
  }
}

std::vector<Schedule> read_rows(LineReader& reader, int n, std::uint64_t m,
                                std::string* pending) {
  std::vector<Schedule> schedules;
  schedules.reserve(static_cast<std::size_t>(n));
  std::string line;
  for (int v = 1; v <= n; ++v) {
    if (pending && v == 1) {
      line = *pending;
      pending = nullptr;
    } else if (!reader.next(line)) {
      throw FileParseError(reader.line, "expected " + std::to_string(n) +
                                            " schedule rows, file ended at row " +
                                            std::to_string(v - 1));
    }
    if (line.size() != m)
      throw FileParseError(reader.line, "row has " + std::to_string(line.size()) +
                                            " columns, expected " + std::to_string(m));
    std::vector<std::uint8_t> bits(m);
    for (std::size_t j = 0; j < m; ++j) {
      if (line[j] != '0' && line[j] != '1')
        throw FileParseError(reader.line, "schedule rows may only contain 0 and 1");
      bits[j] = line[j] == '1';
    }
    schedules.emplace_back(v, std::move(bits));
  }
  return schedules;
}

void expect_end(LineReader& reader) {
  std::string line;
  while (reader.next(line)) {
    if (!line.empty())
      throw FileParseError(reader.line, "unexpected trailing content '" + line + "'");
  }
}

void write_verify_state(std::ostream& out, const char* prefix, const VerifyState& state,
                        std::uint32_t attempts) {
  out << "# " << prefix << "attempts=" << attempts << '\n';
  out << "# " << prefix << "status=" << status_name(state.status) << '\n';
  out << "# " << prefix << "trials=" << state.trials << '\n';
}

void write_selective_body(std::ostream& out, const char* prefix,
                          const SelectiveFamily& family) {
  out << "# " << prefix << "kind=selective\n";
  out << "# " << prefix << "n=" << family.params.n << '\n';
  out << "# " << prefix << "k=" << family.params.k << '\n';
  out << "# " << prefix << "c=" << format_double(family.params.c) << '\n';
  out << "# " << prefix << "seed=" << family.params.seed << '\n';
  write_verify_state(out, prefix, family.verified, family.attempts);
  out << "# " << prefix << "m=" << family.length() << '\n';
}

SelectiveFamily selective_from_header(const KeyValues& kv, const std::string& prefix,
                                      int line) {
  SelectiveFamily family;
  family.params.n = static_cast<int>(parse_ll(require_key(kv, prefix + "n", line), line));
  family.params.k = static_cast<int>(parse_ll(require_key(kv, prefix + "k", line), line));
  family.params.c = parse_double(require_key(kv, prefix + "c", line), line);
  family.params.seed = parse_seed(require_key(kv, prefix + "seed", line), line);
  family.attempts =
      static_cast<std::uint32_t>(parse_u64(require_key(kv, prefix + "attempts", line), line));
  family.verified.status = status_from_name(require_key(kv, prefix + "status", line), line);
  family.verified.trials = parse_u64(require_key(kv, prefix + "trials", line), line);
  if (family.params.n < 1 || family.params.k < 1 || family.params.k > family.params.n)
    throw FileParseError(line, "invalid selective family parameters");
  const std::uint64_t m = parse_u64(require_key(kv, prefix + "m", line), line);
  if (m != selective_family_length(family.params.n, family.params.k, family.params.c))
    throw FileParseError(line, "m does not match the length formula for these parameters");
  return family;
}

}  // namespace

void write_family(std::ostream& out, const SelectiveFamily& family) {
  write_selective_body(out, "", family);
  write_rows(out, family.schedules);
}

void write_family(std::ostream& out, const SynchronizerFamily& family) {
  switch (family.kind) {
    case SyncKind::urs:
      out << "# kind=urs\n";
      out << "# n=" << family.params.n << '\n';
      out << "# c=" << format_double(family.params.c) << '\n';
      out << "# seed=" << family.params.seed << '\n';
      write_verify_state(out, "", family.verified, family.attempts);
      out << "# m=" << family.length() << '\n';
      write_rows(out, family.schedules);
      break;
    case SyncKind::upper_block:
    case SyncKind::block: {
      out << "# kind=" << (family.kind == SyncKind::block ? "block" : "upper-block") << '\n';
      out << "# n=" << family.params.n << '\n';
      out << "# D=" << family.params.ecc << '\n';
      out << "# delta=" << family.params.delta << '\n';
      out << "# r=" << family.params.r << '\n';
      out << "# B=" << family.params.block_len << '\n';
      if (family.kind == SyncKind::block)
        out << "# BB=" << family.composite_block << '\n';
      out << "# c=" << format_double(family.params.c) << '\n';
      out << "# seed=" << family.params.seed << '\n';
      write_verify_state(out, "", family.verified, family.attempts);
      out << "# m=" << family.length() << '\n';
      if (family.kind == SyncKind::block) {
        if (!family.prefix_family)
          throw std::domain_error("write_family: block family is missing its prefix");
        write_selective_body(out, "prefix-", *family.prefix_family);
        write_rows(out, family.schedules);
        write_rows(out, family.prefix_family->schedules);
      } else {
        write_rows(out, family.schedules);
      }
      break;
    }
  }
}

AnyFamily read_family(std::istream& in) {
  LineReader reader{in};
  KeyValues kv;
  std::string line;
  std::string first_row;
  bool have_row = false;
  while (reader.next(line)) {
    if (!line.empty() && line[0] == '#') {
      parse_header_line(line, kv, reader.line);
    } else if (line.empty()) {
      continue;
    } else {
      first_row = line;
      have_row = true;
      break;
    }
  }
  const int header_end = reader.line;
  if (!have_row) throw FileParseError(header_end, "file has no schedule rows");
  const std::string kind = require_key(kv, "kind", header_end);

  if (kind == "selective") {
    SelectiveFamily family = selective_from_header(kv, "", header_end);
    family.schedules = read_rows(reader, family.params.n,
                                 parse_u64(require_key(kv, "m", header_end), header_end),
                                 &first_row);
    expect_end(reader);
    return family;
  }

  if (kind == "urs") {
    SynchronizerFamily family;
    family.kind = SyncKind::urs;
    family.params.n = static_cast<int>(parse_ll(require_key(kv, "n", header_end), header_end));
    family.params.c = parse_double(require_key(kv, "c", header_end), header_end);
    family.params.seed = parse_seed(require_key(kv, "seed", header_end), header_end);
    family.attempts = static_cast<std::uint32_t>(
        parse_u64(require_key(kv, "attempts", header_end), header_end));
    family.verified.status =
        status_from_name(require_key(kv, "status", header_end), header_end);
    family.verified.trials = parse_u64(require_key(kv, "trials", header_end), header_end);
    if (family.params.n < 1 || family.params.c <= 0.0)
      throw FileParseError(header_end, "invalid urs parameters");
    const std::uint64_t m = parse_u64(require_key(kv, "m", header_end), header_end);
    if (m != urs_delay(static_cast<std::uint64_t>(family.params.n),
                       static_cast<std::uint64_t>(family.params.n), family.params.c))
      throw FileParseError(header_end, "m does not match g(n) for these parameters");
    family.schedules = read_rows(reader, family.params.n, m, &first_row);
    expect_end(reader);
    return family;
  }

  if (kind == "upper-block" || kind == "block") {
    SynchronizerFamily family;
    family.kind = kind == "block" ? SyncKind::block : SyncKind::upper_block;
    family.params.n = static_cast<int>(parse_ll(require_key(kv, "n", header_end), header_end));
    family.params.ecc =
        static_cast<int>(parse_ll(require_key(kv, "D", header_end), header_end));
    family.params.delta =
        static_cast<int>(parse_ll(require_key(kv, "delta", header_end), header_end));
    family.params.r = parse_u64(require_key(kv, "r", header_end), header_end);
    family.params.block_len = parse_u64(require_key(kv, "B", header_end), header_end);
    family.params.c = parse_double(require_key(kv, "c", header_end), header_end);
    family.params.seed = parse_seed(require_key(kv, "seed", header_end), header_end);
    family.attempts = static_cast<std::uint32_t>(
        parse_u64(require_key(kv, "attempts", header_end), header_end));
    family.verified.status =
        status_from_name(require_key(kv, "status", header_end), header_end);
    family.verified.trials = parse_u64(require_key(kv, "trials", header_end), header_end);
    if (family.params.c <= 0.0) throw FileParseError(header_end, "invalid c");
    if (family.params.r != block_increment(family.params.n, family.params.ecc))
      throw FileParseError(header_end, "r does not match max(1, floor(n/D))");
    if (family.params.block_len !=
        upper_block_length(family.params.n, family.params.ecc, family.params.delta,
                           family.params.c))
      throw FileParseError(header_end, "B does not match the length formula");
    const std::uint64_t m = parse_u64(require_key(kv, "m", header_end), header_end);

    if (family.kind == SyncKind::upper_block) {
      family.composite_block = family.params.block_len;
      if (m != static_cast<std::uint64_t>(family.params.ecc) * family.params.block_len)
        throw FileParseError(header_end, "m does not equal D*B");
      family.schedules = read_rows(reader, family.params.n, m, &first_row);
      expect_end(reader);
      return family;
    }

    family.composite_block = parse_u64(require_key(kv, "BB", header_end), header_end);
    if (m != static_cast<std::uint64_t>(family.params.ecc) * family.composite_block)
      throw FileParseError(header_end, "m does not equal D*BB");
    SelectiveFamily prefix = selective_from_header(kv, "prefix-", header_end);
    const std::uint64_t prefix_m =
        selective_family_length(prefix.params.n, prefix.params.k, prefix.params.c);
    if (prefix.params.n != family.params.n)
      throw FileParseError(header_end, "prefix n does not match family n");
    if (family.composite_block != prefix_m + family.params.block_len)
      throw FileParseError(header_end, "BB does not equal prefix m plus B");
    family.schedules = read_rows(reader, family.params.n, m, &first_row);
    prefix.schedules = read_rows(reader, family.params.n, prefix_m, nullptr);
    family.prefix_family = std::move(prefix);
    expect_end(reader);
    return family;
  }

  throw FileParseError(header_end, "unknown family kind '" + kind + "'");
}

void write_graph(std::ostream& out, const RadioNetwork& net) {
  out << net.size() << ' ' << net.edges().size() << '\n';
  for (const auto& [u, v] : net.edges()) out << u << ' ' << v << '\n';
  if (net.source()) out << "source " << *net.source() << '\n';
}

RadioNetwork read_graph(std::istream& in) {
  LineReader reader{in};
  std::string line;
  if (!reader.next(line)) throw FileParseError(1, "empty graph file");
  std::istringstream head(line);
  long long n = 0, m = 0;
  std::string extra;
  if (!(head >> n >> m) || (head >> extra))
    throw FileParseError(reader.line, "expected 'n m'");
  if (n < 1 || m < 0) throw FileParseError(reader.line, "invalid node or edge count");

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!reader.next(line))
      throw FileParseError(reader.line, "expected " + std::to_string(m) + " edges, got " +
                                            std::to_string(i));
    std::istringstream row(line);
    long long u = 0, v = 0;
    if (!(row >> u >> v) || (row >> extra))
      throw FileParseError(reader.line, "expected 'u v'");
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }

  std::optional<NodeId> source;
  while (reader.next(line)) {
    if (line.empty()) continue;
    std::istringstream tail(line);
    std::string word;
    tail >> word;
    if (word != "source" || source)
      throw FileParseError(reader.line, "unexpected line '" + line + "'");
    long long s = 0;
    if (!(tail >> s) || (tail >> extra))
      throw FileParseError(reader.line, "expected 'source s'");
    source = static_cast<NodeId>(s);
  }
  try {
    return RadioNetwork::from_edges(static_cast<int>(n), edges, source);
  } catch (const std::domain_error& err) {
    throw FileParseError(reader.line, err.what());
  }
}

void write_wake(std::ostream& out, const WakeSchedule& wake) {
  for (std::size_t i = 0; i < wake.spontaneous.size(); ++i)
    if (wake.spontaneous[i])
      out << static_cast<NodeId>(i + 1) << ' ' << *wake.spontaneous[i] << '\n';
}

WakeSchedule read_wake(std::istream& in, int n) {
  WakeSchedule wake = WakeSchedule::none(n);
  LineReader reader{in};
  std::string line;
  while (reader.next(line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    long long v = 0, t = 0;
    std::string extra;
    if (!(row >> v >> t) || (row >> extra))
      throw FileParseError(reader.line, "expected 'v t'");
    if (v < 1 || v > n)
      throw FileParseError(reader.line, "node " + std::to_string(v) + " out of range");
    if (t < 0) throw FileParseError(reader.line, "wake time must be nonnegative");
    auto& slot = wake.spontaneous[static_cast<std::size_t>(v - 1)];
    if (slot)
      throw FileParseError(reader.line, "duplicate wake time for node " + std::to_string(v));
    slot = static_cast<std::uint64_t>(t);
  }
  return wake;
}

namespace {

void write_id_list(std::ostream& out, const std::vector<NodeId>& ids) {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out << ';';
    out << ids[i];
  }
}

}  // namespace

void write_trace_csv(std::ostream& out, const SimulationTrace& trace, std::uint64_t seed,
                     int n, int ecc, int delta) {
  out << "# seed=" << seed << '\n';
  out << "# n=" << n << " D=" << ecc << " delta=" << delta << '\n';
  out << "step,transmitters,receptions,newly_active\n";
  for (const StepRecord& rec : trace.steps) {
    out << rec.step << ',';
    write_id_list(out, rec.transmitters);
    out << ',';
    for (std::size_t i = 0; i < rec.receptions.size(); ++i) {
      if (i) out << ';';
      out << rec.receptions[i].first << ':' << rec.receptions[i].second;
    }
    out << ',';
    write_id_list(out, rec.newly_active);
    out << '\n';
  }
  out << "# completion=";
  if (trace.completion)
    out << *trace.completion;
  else
    out << "none";
  out << '\n';
}

std::string verdict_text(const Verdict& verdict) {
  std::ostringstream out;
  switch (verdict.status) {
    case VerdictStatus::verified_exhaustive:
      out << "status=verified-exhaustive\n";
      out << "cases=" << verdict.cases_checked << '\n';
      break;
    case VerdictStatus::verified_sampled:
      out << "status=verified-sampled\n";
      out << "trials=" << verdict.trials << '\n';
      break;
    case VerdictStatus::falsified: {
      out << "status=falsified\n";
      const Counterexample& ce = *verdict.counterexample;
      out << "nodes=";
      for (std::size_t i = 0; i < ce.nodes.size(); ++i) {
        if (i) out << ';';
        out << ce.nodes[i];
      }
      out << "\noffsets=";
      for (std::size_t i = 0; i < ce.offsets.size(); ++i) {
        if (i) out << ';';
        out << ce.offsets[i];
      }
      out << "\nwindow=" << ce.window << '\n';
      break;
    }
  }
  return out.str();
}

void write_load_profile_csv(std::ostream& out, const LoadProfile& profile) {
  out << "column,load\n";
  for (std::size_t j = 0; j < profile.loads.size(); ++j)
    out << j << ',' << format_double(profile.loads[j]) << '\n';
}

}  // namespace radiosync
