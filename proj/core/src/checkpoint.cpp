// Copyright 2026 The kspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kspec/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "kspec/error.hpp"
#include "kspec/format.hpp"

namespace kspec {
namespace {

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
  }
  return v;
}

void write_field(std::ostream& os, const SpectralField& f) {
  for (const Complex& c : f) {
    for (double part : {c.real(), c.imag()}) {
      const std::uint64_t bits = to_little(std::bit_cast<std::uint64_t>(part));
      os.write(reinterpret_cast<const char*>(&bits), sizeof bits);
    }
  }
}

void read_field(std::istream& is, SpectralField& f, const std::string& path) {
  for (Complex& c : f) {
    double parts[2];
    for (double& part : parts) {
      std::uint64_t bits = 0;
      if (!is.read(reinterpret_cast<char*>(&bits), sizeof bits))
        throw Error(ErrorCode::ParseError, "checkpoint " + path + " is truncated");
      part = std::bit_cast<double>(to_little(bits));
    }
    c = Complex(parts[0], parts[1]);
  }
}

}  // namespace

void write_checkpoint(const std::string& path, const Grid& grid, const SpectralState& state) {
  check_shape(grid, state);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  os << "KSPEC1 dim=" << grid.dim() << " M=" << grid.modes() << " L=" << format_double(grid.box_length())
     << " t=" << format_double(state.time) << '\n';
  write_field(os, state.theta);
  for (const auto& c : state.u) write_field(os, c);
  if (!os) throw Error(ErrorCode::IoError, "failed while writing " + path);
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::string header;
  if (!std::getline(is, header)) throw Error(ErrorCode::ParseError, "checkpoint " + path + " has no header");

  Checkpoint cp;
  std::istringstream hs(header);
  std::string magic, tok;
  hs >> magic;
  if (magic != "KSPEC1") throw Error(ErrorCode::ParseError, "checkpoint " + path + " lacks the KSPEC1 magic");
  bool seen[4] = {false, false, false, false};
  double time = 0.0;
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "bad header token '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    const std::string value = tok.substr(eq + 1);
    try {
      if (key == "dim") {
        cp.dim = std::stoi(value);
        seen[0] = true;
      } else if (key == "M") {
        cp.modes = std::stoi(value);
        seen[1] = true;
      } else if (key == "L") {
        cp.box_length = std::stod(value);
        seen[2] = true;
      } else if (key == "t") {
        time = std::stod(value);
        seen[3] = true;
      } else {
        throw Error(ErrorCode::ParseError, "unknown header key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::ParseError, "bad value in header token '" + tok + "'");
    }
  }
  for (bool s : seen)
    if (!s) throw Error(ErrorCode::ParseError, "checkpoint header must carry dim, M, L and t");

  const Grid grid = cp.grid();
  cp.state = SpectralState::zeros(grid);
  cp.state.time = time;
  read_field(is, cp.state.theta, path);
  for (auto& c : cp.state.u) read_field(is, c, path);
  if (is.peek() != std::char_traits<char>::eof())
    throw Error(ErrorCode::ParseError, "checkpoint " + path + " has trailing bytes");
  return cp;
}

}  // namespace kspec
