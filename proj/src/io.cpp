#include "cwork/io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace cwork {

namespace {

// ------------------------------------------------------------ helpers ------

const Json& require_field(const Json& j, const char* object_name, const char* field) {
    if (!j.is_object()) {
        throw Error(std::string(object_name) + ": expected a JSON object");
    }
    auto it = j.find(field);
    if (it == j.end()) {
        throw Error(std::string(object_name) + ": missing field '" + field + "'");
    }
    return *it;
}

int require_int(const Json& j, const char* object_name, const char* field) {
    const Json& v = require_field(j, object_name, field);
    if (!v.is_number_integer()) {
        throw Error(std::string(object_name) + ": field '" + field + "' must be an integer");
    }
    return v.get<int>();
}

double require_number(const Json& v, const char* object_name, const char* field) {
    if (!v.is_number()) {
        throw Error(std::string(object_name) + ": field '" + field + "' must be a number");
    }
    return v.get<double>();
}

Complex complex_from_json(const Json& v, const char* object_name, const char* field) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw Error(std::string(object_name) + ": field '" + field +
                    "' entries must be [re, im] number pairs");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

Json complex_to_json(const Complex& z) {
    return Json::array({z.real(), z.imag()});
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) {
            row.push_back(complex_to_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j, const char* object_name) {
    if (!j.is_array() || j.empty()) {
        throw Error(std::string(object_name) + ": field 'matrix' must be a non-empty array");
    }
    const int n = static_cast<int>(j.size());
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != n) {
            throw Error(std::string(object_name) + ": field 'matrix' must be square");
        }
        for (int c = 0; c < n; ++c) {
            m(i, c) = complex_from_json(j[i][c], object_name, "matrix");
        }
    }
    return m;
}

EnergySpectrum spectrum_from_json(const Json& j) {
    EnergySpectrum h;
    h.lo = require_int(j, "spectrum", "lo");
    const Json& levels = require_field(j, "spectrum", "levels");
    if (!levels.is_array()) {
        throw Error("spectrum: field 'levels' must be an array");
    }
    for (const auto& v : levels) {
        h.levels.push_back(require_number(v, "spectrum", "levels"));
    }
    return h;
}

Json spectrum_to_json(const EnergySpectrum& h) {
    return Json{{"lo", h.lo}, {"levels", h.levels}};
}

} // namespace

// ------------------------------------------------------------ primitives ---

Json state_to_json(const LadderState& psi) {
    Json amps = Json::array();
    for (const auto& a : psi.amplitudes) {
        amps.push_back(complex_to_json(a));
    }
    Json j{{"offset", psi.offset}, {"amplitudes", std::move(amps)}};
    if (!psi.spectrum.is_unit()) {
        j["spectrum"] = spectrum_to_json(psi.spectrum);
    }
    return j;
}

LadderState state_from_json(const Json& j) {
    const int offset = require_int(j, "state", "offset");
    const Json& amps = require_field(j, "state", "amplitudes");
    if (!amps.is_array() || amps.empty()) {
        throw Error("state: field 'amplitudes' must be a non-empty array");
    }
    std::vector<Complex> values;
    values.reserve(amps.size());
    for (const auto& v : amps) {
        values.push_back(complex_from_json(v, "state", "amplitudes"));
    }
    EnergySpectrum h = EnergySpectrum::unit_ladder();
    if (auto it = j.find("spectrum"); it != j.end()) {
        h = spectrum_from_json(*it);
    }
    return LadderState::from(offset, std::move(values), std::move(h));
}

Json distribution_to_json(const EnergyDistribution& p) {
    return Json{{"offset", p.offset}, {"weights", p.weights}};
}

EnergyDistribution distribution_from_json(const Json& j) {
    const int offset = require_int(j, "distribution", "offset");
    const Json& weights = require_field(j, "distribution", "weights");
    if (!weights.is_array() || weights.empty()) {
        throw Error("distribution: field 'weights' must be a non-empty array");
    }
    std::vector<double> values;
    values.reserve(weights.size());
    for (const auto& v : weights) {
        values.push_back(require_number(v, "distribution", "weights"));
    }
    return EnergyDistribution::from(offset, std::move(values));
}

// ------------------------------------------------------------- records -----

Json factor_pair_to_json(const FactorPair& f) {
    return Json{{"first", distribution_to_json(f.first)},
                {"second", distribution_to_json(f.second)},
                {"residual", f.residual}};
}

Json deconvolve_result_to_json(const DeconvolveResult& r) {
    Json factors = Json::array();
    for (const auto& f : r.factors) {
        factors.push_back(factor_pair_to_json(f));
    }
    return Json{{"factors", std::move(factors)},
                {"exhaustive", r.exhaustive},
                {"decomposable", r.decomposable}};
}

Json cwp_record_to_json(const CwpRecord& record, const EnergyConservingUnitary& v) {
    Json blocks = Json::array();
    for (std::size_t g = 0; g < v.u.groups.size(); ++g) {
        blocks.push_back(Json{{"group", v.u.groups[g]}, {"matrix", matrix_to_json(v.u.blocks[g])}});
    }
    Json unitary{{"windows",
                  Json{{"s_lo", v.windows.s_lo},
                       {"s_hi", v.windows.s_hi},
                       {"a_lo", v.windows.a_lo},
                       {"a_hi", v.windows.a_hi}}},
                 {"blocks", std::move(blocks)}};
    return Json{{"input", state_to_json(record.input)},
                {"output", state_to_json(record.output)},
                {"work", state_to_json(record.work)},
                {"product_fidelity", record.product_fidelity},
                {"unitarity_residual", record.unitarity_residual},
                {"commutation_residual", record.commutation_residual},
                {"unitary", std::move(unitary)}};
}

StoredCwpRecord cwp_record_from_json(const Json& j) {
    StoredCwpRecord stored;
    stored.record.input = state_from_json(require_field(j, "record", "input"));
    stored.record.output = state_from_json(require_field(j, "record", "output"));
    stored.record.work = state_from_json(require_field(j, "record", "work"));
    stored.record.product_fidelity =
        require_number(require_field(j, "record", "product_fidelity"), "record", "product_fidelity");
    stored.record.unitarity_residual = require_number(
        require_field(j, "record", "unitarity_residual"), "record", "unitarity_residual");
    stored.record.commutation_residual = require_number(
        require_field(j, "record", "commutation_residual"), "record", "commutation_residual");

    const Json& unitary = require_field(j, "record", "unitary");
    const Json& windows = require_field(unitary, "unitary", "windows");
    CwpWindows w;
    w.s_lo = require_int(windows, "windows", "s_lo");
    w.s_hi = require_int(windows, "windows", "s_hi");
    w.a_lo = require_int(windows, "windows", "a_lo");
    w.a_hi = require_int(windows, "windows", "a_hi");
    if (w.s_hi < w.s_lo || w.a_hi < w.a_lo) {
        throw Error("windows: field 's_hi'/'a_hi' must not precede the lower edge");
    }

    EnergyConservingUnitary v;
    v.windows = w;
    v.u.dim = (w.s_hi - w.s_lo + 1) * (w.a_hi - w.a_lo + 1);
    v.u.basis_energies.resize(v.u.dim);
    for (int s = w.s_lo; s <= w.s_hi; ++s) {
        for (int a = w.a_lo; a <= w.a_hi; ++a) {
            v.u.basis_energies[v.flat(s, a)] = static_cast<double>(s + a);
        }
    }
    const Json& blocks = require_field(unitary, "unitary", "blocks");
    if (!blocks.is_array()) {
        throw Error("unitary: field 'blocks' must be an array");
    }
    for (const auto& b : blocks) {
        const Json& group = require_field(b, "block", "group");
        if (!group.is_array() || group.empty()) {
            throw Error("block: field 'group' must be a non-empty array");
        }
        std::vector<int> indices;
        for (const auto& v_idx : group) {
            if (!v_idx.is_number_integer()) {
                throw Error("block: field 'group' entries must be integers");
            }
            const int idx = v_idx.get<int>();
            if (idx < 0 || idx >= v.u.dim) {
                throw Error("block: field 'group' index out of the window range");
            }
            indices.push_back(idx);
        }
        Matrix m = matrix_from_json(require_field(b, "block", "matrix"), "block");
        if (m.rows() != static_cast<int>(indices.size())) {
            throw Error("block: field 'matrix' size must match field 'group'");
        }
        v.u.groups.push_back(std::move(indices));
        v.u.blocks.push_back(std::move(m));
    }
    stored.unitary = std::move(v);
    return stored;
}

Json crooks_report_to_json(const CrooksReport& r) {
    return Json{{"beta", r.beta},
                {"forward", r.forward},
                {"reverse", r.reverse},
                {"lhs_ratio", r.lhs_ratio},
                {"rhs_exponent", r.rhs_exponent},
                {"agreement", r.agreement},
                {"delta_f", r.delta_f},
                {"lambda0", r.lambda0},
                {"lambda1", r.lambda1}};
}

// -------------------------------------------------------------- files ------

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open for reading: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoError("read failure: " + path);
    }
    Json j = Json::parse(buffer.str(), nullptr, false);
    if (j.is_discarded()) {
        throw Error("malformed JSON in " + path);
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot open for writing: " + path);
    }
    out << text;
    out.flush();
    if (!out) {
        throw IoError("write failure: " + path);
    }
}

std::string config_hash(const Json& j) {
    const std::string canonical = j.dump();
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

Json tolerance_set() {
    return Json{{"norm", kNormTol},
                {"convolution", 1e-10},
                {"unitarity", 1e-10},
                {"commutation", 1e-10},
                {"work_inference", 1e-10},
                {"deconvolve_residual", 1e-8},
                {"crooks_agreement", 1e-9},
                {"potential_identity", 1e-9},
                {"cumulant_agreement", 1e-6},
                {"fidelity_deficit", 1e-12}};
}

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) {
        return "nan";
    }
    return std::string(buf, ptr);
}

} // namespace cwork
