// Copyright 2026 The prodstate Authors
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


#include "prodstate/state_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "prodstate/error.hpp"

namespace prodstate {

namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return ss.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& doc, const char* name) {
  if (!doc.is_object()) throw ParseError("state file must be a JSON object");
  auto it = doc.find(name);
  if (it == doc.end()) throw ParseError(std::string("missing field \"") + name + "\"");
  return *it;
}

Complex to_complex(const json& pair, const std::string& where) {
  if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
    throw ParseError(where + ": expected [re, im]");
  return {pair[0].get<double>(), pair[1].get<double>()};
}

Dims parse_dims(const json& doc) {
  const json& d = field(doc, "dims");
  if (!d.is_array() || d.empty()) throw ParseError("\"dims\" must be a non-empty integer list");
  std::vector<int> dims;
  for (const auto& v : d) {
    if (!v.is_number_integer() || v.get<long>() < 1) throw ParseError("\"dims\" entries must be integers >= 1");
    dims.push_back(v.get<int>());
  }
  return Dims(std::move(dims));
}

Matrix parse_matrix(const json& rows, long side, const std::string& where) {
  if (!rows.is_array() || static_cast<long>(rows.size()) != side)
    throw ParseError(where + ": expected " + std::to_string(side) + " rows");
  Matrix m(side, side);
  for (long r = 0; r < side; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<long>(row.size()) != side)
      throw ParseError(where + ": row " + std::to_string(r) + " must have " + std::to_string(side) + " entries");
    for (long c = 0; c < side; ++c)
      m(r, c) = to_complex(row[static_cast<std::size_t>(c)], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

json pair_of(Complex z) { return json::array({z.real(), z.imag()}); }

json dims_json(const Dims& dims) {
  json d = json::array();
  for (int f : dims.factors()) d.push_back(f);
  return d;
}

}  // namespace

AnyState parse_state(const std::string& text) {
  const json doc = parse_json(text);
  const json& kind = field(doc, "kind");
  if (!kind.is_string()) throw ParseError("\"kind\" must be a string");
  Dims dims = parse_dims(doc);
  const json& data = field(doc, "data");

  if (kind == "pure") {
    if (!data.is_array() || static_cast<long>(data.size()) != dims.total())
      throw ParseError("\"data\" must hold " + std::to_string(dims.total()) + " amplitudes");
    Vector amps(dims.total());
    for (long i = 0; i < dims.total(); ++i) amps(i) = to_complex(data[static_cast<std::size_t>(i)], "data[" + std::to_string(i) + "]");
    PureState phi(std::move(dims), std::move(amps));
    const double dev = std::abs(phi.norm() - 1.0);
    if (dev > kLoadTol) {
      std::ostringstream os;
      os.precision(12);
      os << "pure state norm invariant violated, deviation " << dev;
      throw ValidationError("norm", dev, os.str());
    }
    // Accepted but visibly off unit norm (truncated decimals): rescale. Exact
    // files are left bit-for-bit alone so they round-trip.
    if (dev > 1e-12) return PureState(phi.dims(), phi.amplitudes() / phi.norm());
    return phi;
  }
  if (kind == "mixed") {
    Matrix m = parse_matrix(data, dims.total(), "data");
    MixedState rho(std::move(dims), std::move(m), kLoadTol);
    const double tr = rho.matrix().trace().real();
    if (std::abs(tr - 1.0) > 1e-12) return MixedState(rho.dims(), rho.matrix() / tr);
    return rho;
  }
  throw ParseError("\"kind\" must be \"pure\" or \"mixed\"");
}

AnyState load_state(const std::filesystem::path& path) { return parse_state(read_file(path)); }

std::string format_state(const AnyState& state) {
  json doc;
  if (const auto* phi = std::get_if<PureState>(&state)) {
    doc["kind"] = "pure";
    doc["dims"] = dims_json(phi->dims());
    json data = json::array();
    for (Eigen::Index i = 0; i < phi->amplitudes().size(); ++i) data.push_back(pair_of(phi->amplitudes()(i)));
    doc["data"] = std::move(data);
  } else {
    const auto& rho = std::get<MixedState>(state);
    doc["kind"] = "mixed";
    doc["dims"] = dims_json(rho.dims());
    json rows = json::array();
    for (Eigen::Index r = 0; r < rho.matrix().rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < rho.matrix().cols(); ++c) row.push_back(pair_of(rho.matrix()(r, c)));
      rows.push_back(std::move(row));
    }
    doc["data"] = std::move(rows);
  }
  return doc.dump() + "\n";
}

void save_state(const AnyState& state, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << format_state(state);
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<Observable> parse_observables(const std::string& text, const Dims& expected) {
  const json doc = parse_json(text);
  const json& kind = field(doc, "kind");
  if (kind != "observables") throw ParseError("observables file must have \"kind\": \"observables\"");
  const Dims dims = parse_dims(doc);
  if (!(dims == expected)) throw DimensionError("observables dims do not match the state dims");
  const json& data = field(doc, "data");
  if (!data.is_array() || data.size() != dims.size())
    throw ParseError("\"data\" must hold one matrix per factor");
  std::vector<Observable> out;
  for (std::size_t f = 0; f < dims.size(); ++f) {
    Matrix m = parse_matrix(data[f], dims[f], "data[" + std::to_string(f) + "]");
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kLoadTol) {
      std::ostringstream os;
      os.precision(12);
      os << "observable " << f + 1 << " hermitian invariant violated, deviation " << asym;
      throw ValidationError("hermitian", asym, os.str());
    }
    out.push_back(Observable{f, hermitian_part(m)});
  }
  return out;
}

std::vector<Observable> load_observables(const std::filesystem::path& path, const Dims& expected) {
  return parse_observables(read_file(path), expected);
}

}  // namespace prodstate
