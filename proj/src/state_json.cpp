#include "discordant/state_json.hpp"

#include <cmath>
#include <map>
#include <set>

namespace discordant {

namespace {

const std::map<std::string, std::set<std::string>>& allowed_fields() {
    static const std::map<std::string, std::set<std::string>> table = {
        {"circulant", {"a"}},
        {"bell", {"p"}},
        {"werner", {"lambda"}},
        {"isotropic", {"lambda"}},
        {"orthogonal", {"abc"}},
        {"commuting", {"a0", "dmat"}},
        {"dense", {"rho"}},
    };
    return table;
}

double number(const Json& j, const char* field) {
    if (!j.is_number()) throw ParseError(std::string(field) + ": expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw ParseError(std::string(field) + ": non-finite number");
    return x;
}

const Json& require(const Json& doc, const char* field) {
    auto it = doc.find(field);
    if (it == doc.end()) throw ParseError(std::string("missing field '") + field + "'");
    return *it;
}

void expect_rows(const Json& j, const char* field, Eigen::Index rows) {
    if (!j.is_array()) throw ParseError(std::string(field) + ": expected an array");
    if (rows >= 0 && static_cast<Eigen::Index>(j.size()) != rows)
        throw ParseError(std::string(field) + ": expected " + std::to_string(rows) + " rows");
}

}  // namespace

Json complex_matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix complex_matrix_from_json(const Json& j, const char* field) {
    expect_rows(j, field, -1);
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0) throw ParseError(std::string(field) + ": empty matrix");
    ComplexMatrix m(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json& row = j[static_cast<size_t>(r)];
        expect_rows(row, field, rows);
        for (Eigen::Index c = 0; c < rows; ++c) {
            const Json& z = row[static_cast<size_t>(c)];
            if (!z.is_array() || z.size() != 2)
                throw ParseError(std::string(field) + ": entries must be [re, im] pairs");
            m(r, c) = Complex(number(z[0], field), number(z[1], field));
        }
    }
    return m;
}

Json real_matrix_to_json(const RealMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

RealMatrix real_matrix_from_json(const Json& j, const char* field) {
    expect_rows(j, field, -1);
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0) throw ParseError(std::string(field) + ": empty matrix");
    RealMatrix m(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json& row = j[static_cast<size_t>(r)];
        expect_rows(row, field, rows);
        for (Eigen::Index c = 0; c < rows; ++c) m(r, c) = number(row[static_cast<size_t>(c)], field);
    }
    return m;
}

Json circulant_to_json(const CirculantSpec& spec) {
    Json a = Json::array();
    for (const auto& s : spec.sectors()) a.push_back(complex_matrix_to_json(s));
    return {{"kind", "circulant"}, {"d", spec.dim()}, {"a", std::move(a)}};
}

Json dense_to_json(const DensityMatrix& rho, int d) {
    return {{"kind", "dense"}, {"d", d}, {"rho", complex_matrix_to_json(rho.matrix())}};
}

Json bell_to_json(const BellWeights& w) {
    return {{"kind", "bell"}, {"d", w.dim()}, {"p", real_matrix_to_json(w.p())}};
}

StateDocument parse_state(const Json& j) {
    if (!j.is_object()) throw ParseError("state document must be a JSON object");
    const Json& kind_j = require(j, "kind");
    if (!kind_j.is_string()) throw ParseError("kind: expected a string");
    const std::string kind = kind_j.get<std::string>();
    auto entry = allowed_fields().find(kind);
    if (entry == allowed_fields().end()) throw ParseError("unknown kind '" + kind + "'");
    for (const auto& item : j.items()) {
        if (item.key() == "kind" || item.key() == "d") continue;
        if (!entry->second.contains(item.key()))
            throw ParseError("field '" + item.key() + "' is not valid for kind '" + kind + "'");
    }

    const double d_real = number(require(j, "d"), "d");
    if (d_real != std::floor(d_real) || d_real < 2 || d_real > 31) throw ParseError("d: expected an integer in [2, 31]");
    const int d = static_cast<int>(d_real);

    StateDocument doc;
    doc.kind = kind;
    doc.d = d;
    doc.source = j;

    if (kind == "circulant") {
        const Json& a = require(j, "a");
        expect_rows(a, "a", d);
        std::vector<ComplexMatrix> sectors;
        for (const auto& m : a) {
            sectors.push_back(complex_matrix_from_json(m, "a"));
            if (sectors.back().rows() != d) throw ParseError("a: each sector matrix must be d x d");
        }
        doc.circulant.emplace(std::move(sectors));
    } else if (kind == "bell") {
        RealMatrix p = real_matrix_from_json(require(j, "p"), "p");
        if (p.rows() != d) throw ParseError("p: expected d x d weights");
        doc.bell.emplace(std::move(p));
        doc.circulant = bell_diagonal_state(*doc.bell);
    } else if (kind == "werner") {
        const double lambda = number(require(j, "lambda"), "lambda");
        doc.rho = werner_density(d, lambda);
        if (d == 2) doc.circulant = werner_state(d, lambda);
    } else if (kind == "isotropic") {
        doc.circulant = isotropic_state(d, number(require(j, "lambda"), "lambda"));
    } else if (kind == "orthogonal") {
        const Json& abc = require(j, "abc");
        if (!abc.is_array() || abc.size() != 3) throw ParseError("abc: expected three numbers");
        doc.rho = orthogonal_invariant_state({number(abc[0], "abc"), number(abc[1], "abc"), number(abc[2], "abc")}, d);
    } else if (kind == "commuting") {
        ComplexMatrix a0 = complex_matrix_from_json(require(j, "a0"), "a0");
        RealMatrix dmat = real_matrix_from_json(require(j, "dmat"), "dmat");
        if (a0.rows() != d || dmat.rows() != d) throw ParseError("a0 and dmat must be d x d");
        doc.circulant = commuting_group_invariant_state(a0, dmat);
    } else {
        ComplexMatrix rho = complex_matrix_from_json(require(j, "rho"), "rho");
        if (rho.rows() != static_cast<Eigen::Index>(d) * d) throw ParseError("rho: expected d^2 x d^2");
        doc.rho = DensityMatrix(rho);
    }

    if (doc.circulant) {
        doc.rho = circulant_state(*doc.circulant);
    } else if (auto projected = project_circulant(doc.rho, d); std::holds_alternative<CirculantSpec>(projected)) {
        doc.circulant = std::get<CirculantSpec>(std::move(projected));
    }
    return doc;
}

StateDocument parse_state_text(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return parse_state(j);
}

}  // namespace discordant
