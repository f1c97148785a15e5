#include "pmlr/io.hpp"

#include "pmlr/errors.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace pmlr::io {

namespace {

// Whitespace tokenizer that skips '#' comment lines and tracks line numbers
// for error messages.
class Tokens {
public:
    explicit Tokens(std::istream& is) : is_(is) {}

    std::string next(const char* expecting) {
        while (pos_ >= line_tokens_.size()) {
            std::string line;
            if (!std::getline(is_, line)) {
                throw FormatError(std::string("unexpected end of file, expecting ") + expecting);
            }
            ++line_no_;
            line_tokens_.clear();
            pos_ = 0;
            if (!line.empty() && line.front() == '#') {
                continue;
            }
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) {
                line_tokens_.push_back(tok);
            }
        }
        return line_tokens_[pos_++];
    }

    void expect(const std::string& keyword) {
        const auto tok = next(keyword.c_str());
        if (tok != keyword) {
            fail("expected '" + keyword + "', found '" + tok + "'");
        }
    }

    double number(const char* what) {
        const auto tok = next(what);
        try {
            return parse_double(tok);
        } catch (const FormatError&) {
            fail(std::string("expected a number for ") + what + ", found '" + tok + "'");
        }
    }

    std::size_t count(const char* what) {
        const auto tok = next(what);
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size()) {
            fail(std::string("expected a count for ") + what + ", found '" + tok + "'");
        }
        return v;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw FormatError("line " + std::to_string(line_no_) + ": " + msg);
    }

private:
    std::istream& is_;
    std::vector<std::string> line_tokens_;
    std::size_t pos_ = 0;
    std::size_t line_no_ = 0;
};

void write_axes(std::ostream& os, const std::vector<AxisBreakpoints>& axes) {
    os << "axes " << axes.size() << '\n';
    for (const auto& ax : axes) {
        os << "axis " << ax.name() << ' ' << ax.unit() << ' ' << ax.size();
        for (const double v : ax.values()) {
            os << ' ' << format_double(v);
        }
        os << '\n';
    }
}

std::vector<AxisBreakpoints> read_axes(Tokens& t) {
    t.expect("axes");
    const std::size_t k = t.count("axis count");
    std::vector<AxisBreakpoints> axes;
    for (std::size_t j = 0; j < k; ++j) {
        t.expect("axis");
        auto name = t.next("axis name");
        auto unit = t.next("axis unit");
        const std::size_t L = t.count("breakpoint count");
        std::vector<double> mu(L);
        for (auto& v : mu) {
            v = t.number("breakpoint");
        }
        axes.emplace_back(std::move(mu), std::move(name), std::move(unit));
    }
    return axes;
}

void write_outputs(std::ostream& os, const std::vector<std::string>& outputs) {
    os << "outputs " << outputs.size();
    for (const auto& o : outputs) {
        os << ' ' << o;
    }
    os << '\n';
}

std::vector<std::string> read_outputs(Tokens& t) {
    t.expect("outputs");
    std::vector<std::string> outputs(t.count("output count"));
    for (auto& o : outputs) {
        o = t.next("output name");
    }
    return outputs;
}

void read_header(Tokens& t, const std::string& magic, int version) {
    t.expect(magic);
    const auto v = t.count("format version");
    if (v != static_cast<std::size_t>(version)) {
        t.fail("unsupported " + magic + " version " + std::to_string(v));
    }
}

}  // namespace

std::string format_double(double v) {
    if (!std::isfinite(v)) {
        throw NonFiniteError("cannot serialize a non-finite value");
    }
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc()) {
        throw FormatError("number formatting failed");
    }
    return std::string(buf.data(), ptr);
}

double parse_double(std::string_view token) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v)) {
        throw FormatError("not a finite number: '" + std::string(token) + "'");
    }
    return v;
}

void write_dataset(std::ostream& os, const airframe::AeroDataset& data) {
    os << "pmlr-dataset " << kDatasetVersion << '\n';
    os << "# node order: row-major over the listed axes (last axis varies fastest)\n";
    os << "surfaces " << airframe::kSurfaces << '\n';
    for (std::size_t i = 0; i < airframe::kSurfaces; ++i) {
        os << "surface " << airframe::surface_names()[i] << ' '
           << format_double(data.delta_min_deg[i]) << ' ' << format_double(data.delta_max_deg[i])
           << ' ' << format_double(data.rate_max_dps[i]) << '\n';
    }
    os << "tables " << data.tables.size() << '\n';
    for (const auto& t : data.tables) {
        os << "table " << t.name << '\n';
        write_axes(os, t.data.axes());
        write_outputs(os, t.outputs);
        os << "nodes " << t.data.nodes() << '\n';
        const Mat& v = t.data.values();
        for (Eigen::Index c = 0; c < v.cols(); ++c) {
            for (Eigen::Index r = 0; r < v.rows(); ++r) {
                os << (r == 0 ? "" : " ") << format_double(v(r, c));
            }
            os << '\n';
        }
        os << "end\n";
    }
}

airframe::AeroDataset read_dataset(std::istream& is) {
    Tokens t(is);
    read_header(t, "pmlr-dataset", kDatasetVersion);
    airframe::AeroDataset data;
    t.expect("surfaces");
    if (t.count("surface count") != airframe::kSurfaces) {
        t.fail("dataset must describe exactly ten surfaces");
    }
    for (std::size_t i = 0; i < airframe::kSurfaces; ++i) {
        t.expect("surface");
        const auto name = t.next("surface name");
        if (name != airframe::surface_names()[i]) {
            t.fail("surface " + std::to_string(i) + " must be named " +
                   airframe::surface_names()[i]);
        }
        data.delta_min_deg[i] = t.number("surface minimum");
        data.delta_max_deg[i] = t.number("surface maximum");
        data.rate_max_dps[i] = t.number("surface rate");
    }
    t.expect("tables");
    const std::size_t n_tables = t.count("table count");
    for (std::size_t i = 0; i < n_tables; ++i) {
        t.expect("table");
        airframe::NamedTable table;
        table.name = t.next("table name");
        auto axes = read_axes(t);
        table.outputs = read_outputs(t);
        t.expect("nodes");
        const std::size_t n = t.count("node count");
        if (n != node_count(axes)) {
            t.fail("node count does not match the axes of table " + table.name);
        }
        Mat values(static_cast<Eigen::Index>(table.outputs.size()), static_cast<Eigen::Index>(n));
        for (Eigen::Index c = 0; c < values.cols(); ++c) {
            for (Eigen::Index r = 0; r < values.rows(); ++r) {
                values(r, c) = t.number("table value");
            }
        }
        t.expect("end");
        table.data = GriddedDataset(std::move(axes), std::move(values));
        data.tables.push_back(std::move(table));
    }
    return data;
}

void write_models(std::ostream& os, const std::vector<NamedModel>& models) {
    os << "pmlr-model " << kModelVersion << '\n';
    os << "models " << models.size() << '\n';
    for (const auto& m : models) {
        os << "model " << m.name << '\n';
        write_axes(os, m.model.axes());
        write_outputs(os, m.outputs);
        const Mat& g = m.model.gamma();
        os << "gamma " << g.rows() << ' ' << g.cols() << '\n';
        for (Eigen::Index r = 0; r < g.rows(); ++r) {
            for (Eigen::Index c = 0; c < g.cols(); ++c) {
                os << (c == 0 ? "" : " ") << format_double(g(r, c));
            }
            os << '\n';
        }
        os << "end\n";
    }
}

std::vector<NamedModel> read_models(std::istream& is) {
    Tokens t(is);
    read_header(t, "pmlr-model", kModelVersion);
    t.expect("models");
    const std::size_t n = t.count("model count");
    std::vector<NamedModel> out;
    for (std::size_t i = 0; i < n; ++i) {
        t.expect("model");
        NamedModel m;
        m.name = t.next("model name");
        auto axes = read_axes(t);
        m.outputs = read_outputs(t);
        t.expect("gamma");
        const std::size_t rows = t.count("gamma rows");
        const std::size_t cols = t.count("gamma columns");
        if (rows != m.outputs.size()) {
            t.fail("gamma row count differs from the output count of model " + m.name);
        }
        Mat gamma(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        for (Eigen::Index r = 0; r < gamma.rows(); ++r) {
            for (Eigen::Index c = 0; c < gamma.cols(); ++c) {
                gamma(r, c) = t.number("gamma entry");
            }
        }
        t.expect("end");
        m.model = PmlrModel(std::move(gamma), std::move(axes));
        out.push_back(std::move(m));
    }
    return out;
}

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) {
        throw FormatError("cannot open '" + path.string() + "' for reading");
    }
    return is;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw FormatError("cannot open '" + path.string() + "' for writing");
    }
    return os;
}

}  // namespace

airframe::AeroDataset load_dataset(const std::filesystem::path& path) {
    auto is = open_in(path);
    return read_dataset(is);
}

void save_dataset(const std::filesystem::path& path, const airframe::AeroDataset& data) {
    auto os = open_out(path);
    write_dataset(os, data);
}

std::vector<NamedModel> load_models(const std::filesystem::path& path) {
    auto is = open_in(path);
    return read_models(is);
}

void save_models(const std::filesystem::path& path, const std::vector<NamedModel>& models) {
    auto os = open_out(path);
    write_models(os, models);
}

}  // namespace pmlr::io
