#pragma once

#include "ihs/errors.hpp"
#include "ihs/rng.hpp"
#include "ihs/types.hpp"

#include <Eigen/QR>

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ihs {

enum class DatasetSource { CSVFile, LibsvmFile, SyntheticExp, SyntheticPoly };
enum class SyntheticKind { Exp, Poly };

struct Dataset {
    DatasetSource source = DatasetSource::CSVFile;
    Matrix A;
    Vector b;
    std::string provenance;

    Index n() const noexcept { return A.rows(); }
    Index d() const noexcept { return A.cols(); }
};

/// Orthonormal columns from the thin QR of a seeded Gaussian matrix.
inline Matrix orthonormal_factor(Index rows, Index cols, std::mt19937_64& gen) {
    Matrix G(rows, cols);
    fill_gaussian(G, gen);
    Eigen::HouseholderQR<Matrix> qr(G);
    return qr.householderQ() * Matrix::Identity(rows, cols);
}

/// A = U diag(sigma) V^T with seeded orthonormal factors; the workhorse for
/// all synthetic spectra.
inline Matrix matrix_with_spectrum(Index n, Index d, const Vector& sigma, std::uint64_t seed) {
    if (n < d || d < 1) throw InvalidInput("matrix_with_spectrum: need n >= d >= 1");
    if (sigma.size() != d) throw InvalidInput("matrix_with_spectrum: spectrum length must equal d");
    auto gen_u = make_stream(seed, 10);
    auto gen_v = make_stream(seed, 11);
    Matrix U = orthonormal_factor(n, d, gen_u);
    Matrix V = orthonormal_factor(d, d, gen_v);
    return U * sigma.asDiagonal() * V.transpose();
}

inline Vector synthetic_spectrum(SyntheticKind kind, Index d) {
    Vector sigma(d);
    for (Index j = 0; j < d; ++j)
        sigma(j) = kind == SyntheticKind::Exp ? std::pow(0.95, static_cast<double>(j + 1))
                                              : 1.0 / static_cast<double>(j + 1);
    return sigma;
}

/// Synthetic benchmark data: singular values 0.95^j (Exp) or 1/j (Poly),
/// j = 1..d, planted model b = A x_pl + noise with x_pl entries
/// N(0,1)/sqrt(d) and noise entries N(0,1)/sqrt(n).
inline Dataset generate_synthetic(SyntheticKind kind, Index n, Index d, std::uint64_t seed) {
    if (n < d || d < 1) throw InvalidInput("generate_synthetic: need n >= d >= 1");
    Dataset ds;
    ds.source = kind == SyntheticKind::Exp ? DatasetSource::SyntheticExp : DatasetSource::SyntheticPoly;
    ds.A = matrix_with_spectrum(n, d, synthetic_spectrum(kind, d), seed);

    auto gen_x = make_stream(seed, 12);
    auto gen_e = make_stream(seed, 13);
    Vector x_pl(d), noise(n);
    fill_gaussian(x_pl, gen_x, 1.0 / std::sqrt(static_cast<double>(d)));
    fill_gaussian(noise, gen_e, 1.0 / std::sqrt(static_cast<double>(n)));
    ds.b = ds.A * x_pl + noise;

    ds.provenance = std::string("synthetic-") + (kind == SyntheticKind::Exp ? "exp" : "poly") +
                    " n=" + std::to_string(n) + " d=" + std::to_string(d) +
                    " seed=" + std::to_string(seed);
    return ds;
}

namespace detail {

inline double parse_number(const std::string& tok, long line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
        if (pos != tok.size()) throw ParseError("trailing characters in number '" + tok + "'", line);
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("malformed number '" + tok + "'", line);
    }
}

inline bool blank(const std::string& s) {
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace detail

/// CSV: each row is one observation, the last column is the entry of b and
/// the remaining columns form the corresponding row of A.
inline Dataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("load_csv: cannot open '" + path + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::blank(line)) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) row.push_back(detail::parse_number(tok, lineno));
        if (row.size() < 2) throw ParseError("need at least one feature column and one label", lineno);
        if (!rows.empty() && row.size() != rows.front().size())
            throw ShapeError("load_csv: row " + std::to_string(lineno) + " has " +
                             std::to_string(row.size()) + " columns, expected " +
                             std::to_string(rows.front().size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("load_csv: no data rows in '" + path + "'", lineno);

    const Index n = static_cast<Index>(rows.size());
    const Index d = static_cast<Index>(rows.front().size()) - 1;
    Dataset ds;
    ds.source = DatasetSource::CSVFile;
    ds.A.resize(n, d);
    ds.b.resize(n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < d; ++j) ds.A(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        ds.b(i) = rows[static_cast<std::size_t>(i)].back();
    }
    if (!ds.A.allFinite() || !ds.b.allFinite()) throw InvalidInput("load_csv: non-finite entries");
    ds.provenance = "csv:" + path;
    return ds;
}

/// libsvm/svmlight text format: "label index:value ...", indices 1-based,
/// densified with zeros for absent features.
inline Dataset load_libsvm(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("load_libsvm: cannot open '" + path + "'");
    std::vector<double> labels;
    std::vector<std::map<Index, double>> feats;
    Index d = 0;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::blank(line)) continue;
        std::stringstream ss(line);
        std::string tok;
        if (!(ss >> tok)) throw ParseError("missing label", lineno);
        labels.push_back(detail::parse_number(tok, lineno));
        std::map<Index, double> row;
        while (ss >> tok) {
            const auto colon = tok.find(':');
            if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
                throw ParseError("expected 'index:value', got '" + tok + "'", lineno);
            long idx = 0;
            try {
                idx = std::stol(tok.substr(0, colon));
            } catch (const std::exception&) {
                throw ParseError("malformed feature index in '" + tok + "'", lineno);
            }
            if (idx < 1) throw ParseError("feature indices are 1-based, got " + std::to_string(idx), lineno);
            row[static_cast<Index>(idx - 1)] = detail::parse_number(tok.substr(colon + 1), lineno);
            d = std::max<Index>(d, static_cast<Index>(idx));
        }
        feats.push_back(std::move(row));
    }
    if (labels.empty()) throw ParseError("load_libsvm: no data rows in '" + path + "'", lineno);
    if (d == 0) throw ParseError("load_libsvm: no features present", lineno);

    const Index n = static_cast<Index>(labels.size());
    Dataset ds;
    ds.source = DatasetSource::LibsvmFile;
    ds.A = Matrix::Zero(n, d);
    ds.b.resize(n);
    for (Index i = 0; i < n; ++i) {
        ds.b(i) = labels[static_cast<std::size_t>(i)];
        for (const auto& [j, v] : feats[static_cast<std::size_t>(i)]) ds.A(i, j) = v;
    }
    if (!ds.A.allFinite() || !ds.b.allFinite()) throw InvalidInput("load_libsvm: non-finite entries");
    ds.provenance = "libsvm:" + path;
    return ds;
}

} // namespace ihs
