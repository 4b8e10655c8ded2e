#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "formfind/dimension.hpp"
#include "formfind/errors.hpp"
#include "formfind/random.hpp"

namespace formfind {

enum class ColumnRole { feature, output, dummy, angle };

inline std::string role_name(ColumnRole r) {
    switch (r) {
        case ColumnRole::feature: return "feature";
        case ColumnRole::output: return "output";
        case ColumnRole::dummy: return "dummy";
        case ColumnRole::angle: return "angle";
    }
    return "feature";
}

inline ColumnRole role_from_name(const std::string& s) {
    if (s == "feature") return ColumnRole::feature;
    if (s == "output") return ColumnRole::output;
    if (s == "dummy") return ColumnRole::dummy;
    if (s == "angle") return ColumnRole::angle;
    throw DataError("unknown column role '" + s + "'");
}

struct Column {
    std::string name;
    std::vector<double> values;
    std::optional<Dimension> dimension;
    ColumnRole role = ColumnRole::feature;

    void validate() const {
        if (values.size() < 2) throw DataError("column '" + name + "' has fewer than 2 rows");
        for (double v : values)
            if (!std::isfinite(v)) throw NonFinite("non-finite value in column '" + name + "'");
    }
};

struct Dataset {
    std::vector<Column> features;
    Column output;

    std::size_t rows() const { return output.values.size(); }

    void validate() const {
        output.validate();
        std::set<std::string> names;
        for (const auto& f : features) {
            f.validate();
            if (f.values.size() != rows()) throw LengthMismatch("column '" + f.name + "' row count differs");
            if (!names.insert(f.name).second) throw DataError("duplicate feature name '" + f.name + "'");
        }
    }

    int feature_index(const std::string& name) const {
        for (std::size_t i = 0; i < features.size(); ++i)
            if (features[i].name == name) return static_cast<int>(i);
        return -1;
    }

    Dataset with_features(const std::vector<std::size_t>& keep) const {
        Dataset out;
        out.output = output;
        for (std::size_t i : keep) out.features.push_back(features[i]);
        return out;
    }
};

struct Standardized {
    std::vector<double> values;
    double mean = 0.0;
    double std = 1.0;  // population, divide by N
};

inline Standardized standardize(const std::vector<double>& v) {
    if (v.size() < 2) throw DataError("standardize needs at least 2 values");
    double sum = 0.0;
    for (double x : v) {
        if (!std::isfinite(x)) throw NonFinite();
        sum += x;
    }
    const double n = static_cast<double>(v.size());
    const double mean = sum / n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / n);
    if (sd == 0.0) throw ZeroVariance();
    Standardized out;
    out.mean = mean;
    out.std = sd;
    out.values.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out.values[i] = (v[i] - mean) / sd;
    return out;
}

// Deterministic shuffled row partition. Either side below 2 rows is an error.
inline std::pair<Dataset, Dataset> split(const Dataset& ds, double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw UsageError("train fraction must be in (0, 1)");
    const std::size_t n = ds.rows();
    const auto n_train =
        static_cast<std::size_t>(std::floor(static_cast<double>(n) * train_fraction + 0.5));
    if (n_train < 2 || n - n_train < 2) throw EmptyPartition();
    Rng rng(seed);
    const auto perm = rng.permutation(n);

    auto take = [&](std::size_t lo, std::size_t hi) {
        Dataset part;
        auto copy_rows = [&](const Column& src) {
            Column c;
            c.name = src.name;
            c.dimension = src.dimension;
            c.role = src.role;
            c.values.reserve(hi - lo);
            for (std::size_t i = lo; i < hi; ++i) c.values.push_back(src.values[perm[i]]);
            return c;
        };
        for (const auto& f : ds.features) part.features.push_back(copy_rows(f));
        part.output = copy_rows(ds.output);
        return part;
    };
    return {take(0, n_train), take(n_train, n)};
}

// Renames columns to X1..Xn / Y and strips dimensions and roles.
inline Dataset flatten(const Dataset& ds) {
    Dataset out = ds;
    for (std::size_t i = 0; i < out.features.size(); ++i) {
        out.features[i].name = "X" + std::to_string(i + 1);
        out.features[i].dimension.reset();
        out.features[i].role = ColumnRole::feature;
    }
    out.output.name = "Y";
    out.output.dimension.reset();
    out.output.role = ColumnRole::output;
    return out;
}

namespace detail {

inline std::string format_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

inline double parse_double(const std::string& s, std::size_t line) {
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw DataError("bad numeric field '" + s + "' on line " + std::to_string(line));
    return v;
}

}  // namespace detail

inline void write_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    for (const auto& f : ds.features) out << f.name << ",";
    out << ds.output.name << "\n";
    for (std::size_t i = 0; i < ds.rows(); ++i) {
        for (const auto& f : ds.features) out << detail::format_double(f.values[i]) << ",";
        out << detail::format_double(ds.output.values[i]) << "\n";
    }
}

// Sidecar metadata: column name -> {role, dimension exponents as exact strings}.
inline void write_metadata(const Dataset& ds, const std::string& path) {
    nlohmann::ordered_json cols;
    auto one = [](const Column& c) {
        nlohmann::ordered_json j;
        j["role"] = role_name(c.role);
        if (c.dimension) {
            nlohmann::ordered_json dims = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < Dimension::kSlots; ++i) dims.push_back((*c.dimension)[i].str());
            j["dimension"] = dims;
        }
        return j;
    };
    for (const auto& f : ds.features) cols[f.name] = one(f);
    cols[ds.output.name] = one(ds.output);
    nlohmann::ordered_json root;
    root["columns"] = cols;
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << root.dump(2) << "\n";
}

// Last column is the output unless the metadata marks another column as output.
inline Dataset read_csv(const std::string& path, const std::string& metadata_path = "") {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw DataError("'" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> names;
    {
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) names.push_back(tok);
    }
    if (names.size() < 2) throw DataError("'" + path + "' needs at least one feature and one output column");
    std::vector<std::vector<double>> cols(names.size());
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        std::size_t i = 0;
        while (std::getline(ss, tok, ',')) {
            if (i >= cols.size()) throw DataError("too many fields on line " + std::to_string(line_no));
            cols[i++].push_back(detail::parse_double(tok, line_no));
        }
        if (i != cols.size()) throw DataError("too few fields on line " + std::to_string(line_no));
    }

    std::string output_name = names.back();
    nlohmann::json meta;
    if (!metadata_path.empty()) {
        std::ifstream min(metadata_path);
        if (!min) throw DataError("cannot read '" + metadata_path + "'");
        try {
            min >> meta;
        } catch (const std::exception& e) {
            throw DataError("bad metadata JSON: " + std::string(e.what()));
        }
        if (meta.contains("columns"))
            for (auto& [name, j] : meta["columns"].items())
                if (j.contains("role") && j["role"] == "output") output_name = name;
    }

    Dataset ds;
    for (std::size_t i = 0; i < names.size(); ++i) {
        Column c;
        c.name = names[i];
        c.values = std::move(cols[i]);
        if (!metadata_path.empty() && meta.contains("columns") && meta["columns"].contains(c.name)) {
            const auto& j = meta["columns"][c.name];
            if (j.contains("role")) c.role = role_from_name(j["role"].get<std::string>());
            if (j.contains("dimension")) {
                Dimension d;
                const auto& dims = j["dimension"];
                if (dims.size() != Dimension::kSlots) throw DataError("dimension vector must have 5 entries");
                for (std::size_t k = 0; k < Dimension::kSlots; ++k)
                    d[k] = Rational::parse(dims[k].get<std::string>());
                c.dimension = d;
            }
            if (c.role == ColumnRole::angle && !c.dimension) c.dimension = Dimension::angle();
        }
        if (c.name == output_name) {
            c.role = ColumnRole::output;
            ds.output = std::move(c);
        } else {
            ds.features.push_back(std::move(c));
        }
    }
    if (ds.output.values.empty()) throw DataError("no output column found");
    ds.validate();
    return ds;
}

}  // namespace formfind
