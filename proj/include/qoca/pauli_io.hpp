// Copyright 2026 The qoca-workbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Hamiltonian interchange format.
//
// One term per line: `<coeff_real> <coeff_imag> <letters>`, qubit 1 first.
// Lines starting with `#` are comments; comments of the form `# key=value`
// are collected as metadata. Blank lines are ignored.

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "qoca/pauli.hpp"

namespace qoca {

struct HamiltonianFile {
  PauliSum hamiltonian;
  std::map<std::string, std::string> metadata;

  std::optional<std::string> meta(const std::string& key) const {
    auto it = metadata.find(key);
    if (it == metadata.end()) return std::nullopt;
    return it->second;
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string& tok, std::size_t line) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ParseError("bad number '" + tok + "'", line);
  return v;
}

}  // namespace detail

/// Formats a double with 17 significant digits.
inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

/// Writes terms in letter order (the map order), one per line.
inline void write_pauli_sum(std::ostream& os, const PauliSum& s,
                            const std::map<std::string, std::string>& metadata = {}) {
  for (const auto& [k, v] : metadata) os << "# " << k << "=" << v << "\n";
  for (const auto& [p, c] : s) {
    os << format_double(c.real()) << " " << format_double(c.imag()) << " " << p.str() << "\n";
  }
}

inline std::string to_text(const PauliSum& s) {
  std::ostringstream os;
  write_pauli_sum(os, s);
  return os.str();
}

/// Parses the interchange format. Duplicate strings are summed. The qubit
/// count is taken from the letter strings, which must all agree.
inline HamiltonianFile read_pauli_sum(std::istream& is) {
  HamiltonianFile out;
  std::string raw;
  std::size_t lineno = 0;
  std::optional<std::size_t> nq;
  while (std::getline(is, raw)) {
    ++lineno;
    const std::string line = detail::trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string body = detail::trim(std::string_view(line).substr(1));
      if (auto eq = body.find('='); eq != std::string::npos && eq > 0) {
        out.metadata[detail::trim(std::string_view(body).substr(0, eq))] =
            detail::trim(std::string_view(body).substr(eq + 1));
      }
      continue;
    }
    std::istringstream ls(line);
    std::string re, im, letters, extra;
    if (!(ls >> re >> im >> letters)) {
      throw ParseError("expected '<real> <imag> <letters>'", lineno);
    }
    if (ls >> extra) throw ParseError("unexpected trailing token '" + extra + "'", lineno);
    const double cr = detail::parse_double(re, lineno);
    const double ci = detail::parse_double(im, lineno);
    if (letters.empty() || letters.size() > kMaxQubits) {
      throw ParseError("letter string length out of range", lineno);
    }
    if (nq && *nq != letters.size()) {
      throw ParseError("term acts on " + std::to_string(letters.size()) +
                           " qubits, earlier terms on " + std::to_string(*nq),
                       lineno);
    }
    nq = letters.size();
    PauliString p;
    try {
      p = PauliString::from_letters(letters);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno);
    }
    if (out.hamiltonian.num_qubits() == 0) out.hamiltonian = PauliSum(letters.size());
    out.hamiltonian.add_term(p, {cr, ci});
  }
  if (!nq) throw ParseError("no terms found");
  return out;
}

inline PauliSum parse_pauli_text(const std::string& text) {
  std::istringstream is(text);
  return read_pauli_sum(is).hamiltonian;
}

/// Loads a Hamiltonian file, rejecting non-Hermitian sums and, when given,
/// a qubit count that disagrees with `expected_qubits`.
inline HamiltonianFile load_hamiltonian_file(const std::string& path,
                                             std::optional<std::size_t> expected_qubits = {}) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open Hamiltonian file '" + path + "'");
  HamiltonianFile f = read_pauli_sum(in);
  if (!f.hamiltonian.is_hermitian(1e-12)) {
    throw ParseError("Hamiltonian in '" + path + "' is not Hermitian");
  }
  if (expected_qubits && *expected_qubits != f.hamiltonian.num_qubits()) {
    throw ParseError("Hamiltonian in '" + path + "' acts on " +
                     std::to_string(f.hamiltonian.num_qubits()) + " qubits, config expects " +
                     std::to_string(*expected_qubits));
  }
  return f;
}

}  // namespace qoca
