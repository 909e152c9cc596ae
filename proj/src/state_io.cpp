#include "shorent/state_io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace shorent {

namespace {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string state_to_json(const StateVector& state) {
  std::string out = "{\"num_qubits\": " + std::to_string(state.num_qubits()) + ", \"amplitudes\": [";
  bool first = true;
  for (const Complex& a : state.amplitudes()) {
    if (!first) out += ", ";
    first = false;
    out += "[" + format_double(a.real()) + ", " + format_double(a.imag()) + "]";
  }
  out += "]}\n";
  return out;
}

StateVector state_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed state file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("amplitudes") || !doc["amplitudes"].is_array()) {
    throw std::invalid_argument("malformed state file: missing \"amplitudes\" array");
  }
  const auto& arr = doc["amplitudes"];
  const std::size_t n = arr.size();
  if (n < 2 || !std::has_single_bit(n)) {
    throw std::invalid_argument("state dimension " + std::to_string(n) + " is not a power of two");
  }
  if (doc.contains("num_qubits")) {
    if (!doc["num_qubits"].is_number_integer()) {
      throw std::invalid_argument("malformed state file: num_qubits must be an integer");
    }
    const auto L = doc["num_qubits"].get<long long>();
    if (L < 1 || L > kMaxQubits || (std::size_t{1} << L) != n) {
      throw std::invalid_argument("state dimension " + std::to_string(n) +
                                  " does not match num_qubits " + std::to_string(L));
    }
  }
  std::vector<Complex> amps;
  amps.reserve(n);
  for (const auto& entry : arr) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
      throw std::invalid_argument("malformed state file: amplitudes must be [re, im] pairs");
    }
    amps.emplace_back(entry[0].get<double>(), entry[1].get<double>());
  }
  return StateVector(std::move(amps));
}

void write_state_file(const std::filesystem::path& path, const StateVector& state) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << state_to_json(state);
}

StateVector read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return state_from_json(buf.str());
}

}  // namespace shorent
