#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "radiosync/oracle.hpp"
#include "radiosync/protocols.hpp"
#include "radiosync/radionet.hpp"
#include "radiosync/selective.hpp"
#include "radiosync/synchronizer.hpp"

namespace radiosync {

class FileParseError : public std::runtime_error {
 public:
  FileParseError(int line_number, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + what),
        line(line_number) {}
  int line;
};

// Family files: `# key=value` header lines, then n rows of {0,1} characters
// (node i on line i).  Block families append the embedded selective prefix as
// `# prefix-*` header lines followed by its n rows.  All formats round-trip
// to identical in-memory objects and identical bytes.
void write_family(std::ostream& out, const SelectiveFamily& family);
void write_family(std::ostream& out, const SynchronizerFamily& family);

using AnyFamily = std::variant<SelectiveFamily, SynchronizerFamily>;
AnyFamily read_family(std::istream& in);

// Graph files: `n m`, then m lines `u v` (directed, 1-indexed), then an
// optional `source s` line.
void write_graph(std::ostream& out, const RadioNetwork& net);
RadioNetwork read_graph(std::istream& in);

// Wake files: one `v t` pair per line (node v wakes spontaneously at step t).
void write_wake(std::ostream& out, const WakeSchedule& wake);
WakeSchedule read_wake(std::istream& in, int n);

// Trace CSV: `# seed=...`, `# n=... D=... delta=...`, a column header row,
// sparse data rows `step,transmitters,receptions,newly_active` (id lists
// semicolon-separated, receptions as receiver:sender), and a final
// `# completion=<step|none>` line.
void write_trace_csv(std::ostream& out, const SimulationTrace& trace, std::uint64_t seed,
                     int n, int ecc, int delta);

std::string verdict_text(const Verdict& verdict);

void write_load_profile_csv(std::ostream& out, const LoadProfile& profile);

// Shortest round-trip-exact decimal rendering (%.17g trimmed via re-parse).
std::string format_double(double value);

}  // namespace radiosync
