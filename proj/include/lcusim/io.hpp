#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "lcusim/densmat.hpp"
#include "lcusim/matrix.hpp"
#include "lcusim/statevec.hpp"

namespace lcusim::io {

using nlohmann::json;

/*
 * State files are JSON, either
 *   {"kind":"basis","num_qubits":n,"index":k}
 * or
 *   {"kind":"amplitudes","num_qubits":n,"amps":[[re,im],...]}
 * where amplitude lists must normalize within 1e-9. Density-matrix files use
 *   {"kind":"density","dim":d,"entries":[[[re,im],...],...]}.
 */

inline json complex_to_json(const complex_t& z) { return json::array({z.real(), z.imag()}); }

inline complex_t complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("expected a [re,im] pair");
    return complex_t{j[0].get<double>(), j[1].get<double>()};
}

inline json state_to_json(const StateVector& s) {
    json amps = json::array();
    for (const auto& a : s.amplitudes()) amps.push_back(complex_to_json(a));
    return json{{"kind", "amplitudes"}, {"num_qubits", s.num_qubits()}, {"amps", std::move(amps)}};
}

inline StateVector state_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "basis")
        return basis_state(j.at("num_qubits").get<std::size_t>(),
                           j.at("index").get<std::size_t>());
    if (kind == "amplitudes") {
        const auto& amps_json = j.at("amps");
        cvector_t amps;
        amps.reserve(amps_json.size());
        for (const auto& a : amps_json) amps.push_back(complex_from_json(a));
        return from_amplitudes(j.at("num_qubits").get<std::size_t>(), std::move(amps), true);
    }
    throw std::invalid_argument("unknown state kind \"" + kind + "\"");
}

inline json density_to_json(const DensityMatrix& rho) {
    json rows = json::array();
    for (std::size_t r = 0; r < rho.dim(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < rho.dim(); ++c)
            row.push_back(complex_to_json(rho.entries().at(r, c)));
        rows.push_back(std::move(row));
    }
    return json{{"kind", "density"}, {"dim", rho.dim()}, {"entries", std::move(rows)}};
}

inline DensityMatrix density_from_json(const json& j) {
    const std::size_t d = j.at("dim").get<std::size_t>();
    const auto& rows = j.at("entries");
    if (rows.size() != d)
        throw std::invalid_argument("density matrix row count does not match dim");
    ComplexMatrix m(d, d);
    for (std::size_t r = 0; r < d; ++r) {
        if (rows[r].size() != d)
            throw std::invalid_argument("density matrix column count does not match dim");
        for (std::size_t c = 0; c < d; ++c) m.at(r, c) = complex_from_json(rows[r][c]);
    }
    return DensityMatrix::from_matrix(std::move(m));
}

inline json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw std::invalid_argument("cannot open \"" + path + "\"");
    json j;
    f >> j;
    return j;
}

inline void save_json(const std::string& path, const json& j) {
    std::ofstream f(path);
    if (!f)
        throw std::invalid_argument("cannot open \"" + path + "\" for writing");
    f << j.dump(2) << '\n';
}

inline StateVector load_state(const std::string& path) { return state_from_json(load_json(path)); }

inline void save_state(const std::string& path, const StateVector& s) {
    save_json(path, state_to_json(s));
}

// accepts either a state spec (promoted to a pure density matrix) or a
// density-matrix file
inline DensityMatrix load_density_or_state(const std::string& path) {
    const json j = load_json(path);
    if (j.at("kind").get<std::string>() == "density") return density_from_json(j);
    return from_pure(state_from_json(j));
}

// CSV with header position,probability; 17 significant digits round-trips
// doubles losslessly
inline void write_distribution_csv(const std::string& path, const std::vector<double>& probs) {
    std::ofstream f(path);
    if (!f)
        throw std::invalid_argument("cannot open \"" + path + "\" for writing");
    f << "position,probability\n";
    char line[64];
    for (std::size_t x = 0; x < probs.size(); ++x) {
        std::snprintf(line, sizeof line, "%zu,%.17g\n", x, probs[x]);
        f << line;
    }
}

inline std::vector<double> read_distribution_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw std::invalid_argument("cannot open \"" + path + "\"");
    std::string line;
    if (!std::getline(f, line) || line != "position,probability")
        throw std::invalid_argument("bad distribution CSV header in \"" + path + "\"");
    std::vector<double> probs;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("bad distribution CSV row: " + line);
        const std::size_t position = std::stoull(line.substr(0, comma));
        if (position != probs.size())
            throw std::invalid_argument("distribution CSV positions must be consecutive");
        probs.push_back(std::stod(line.substr(comma + 1)));
    }
    return probs;
}

}
