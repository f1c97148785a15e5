// pmlrca: fit, evaluate and fly piecewise multi-linear aerodynamic models.
//
// Exit status: 0 success, 1 usage or input error, 2 numerical failure.

#include "pmlr/airframe.hpp"
#include "pmlr/alloc.hpp"
#include "pmlr/errors.hpp"
#include "pmlr/io.hpp"
#include "pmlr/pmlr.hpp"
#include "pmlr/sim.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

using pmlr::FormatError;
using pmlr::Mat;
using pmlr::Vec;

std::vector<double> parse_list(const std::string& text, char sep) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, sep)) {
        std::istringstream ts(tok);
        std::string word;
        while (ts >> word) {
            out.push_back(pmlr::io::parse_double(word));
        }
    }
    return out;
}

Vec to_vec(const std::vector<double>& v) {
    return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::string fmt(double v) { return pmlr::io::format_double(v); }

void print_row(std::ostream& os, const Vec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        os << (i == 0 ? "" : " ") << fmt(v[i]);
    }
    os << '\n';
}

int cmd_fit(const std::string& dataset_path, const std::string& out_path,
            const std::string& method) {
    const auto data = pmlr::io::load_dataset(dataset_path);
    std::vector<pmlr::io::NamedModel> models;
    for (const auto& t : data.tables) {
        pmlr::io::NamedModel m;
        m.name = t.name;
        m.outputs = t.outputs;
        m.model = method == "iterative" ? pmlr::fit_iterative(t.data) : pmlr::fit_regression(t.data);
        models.push_back(std::move(m));
    }
    pmlr::io::save_models(out_path, models);
    std::cout << "fitted " << models.size() << " models (" << method << ") -> " << out_path << '\n';
    return 0;
}

int cmd_eval(const std::string& model_path, const std::string& at, const std::string& component) {
    const auto models = pmlr::io::load_models(model_path);
    const Vec z = to_vec(parse_list(at, ','));
    int shown = 0;
    for (const auto& m : models) {
        if (!component.empty() ? m.name != component
                               : m.model.k() != static_cast<std::size_t>(z.size())) {
            continue;
        }
        Vec value;
        Mat jac;
        m.model.evaluate_with_jacobian(z, value, jac);
        if (!m.model.inside_hull(z)) {
            std::cerr << "warning: point lies outside the grid of " << m.name
                      << "; value is a linear extrapolation\n";
        }
        std::cout << "model " << m.name << '\n';
        for (Eigen::Index r = 0; r < value.size(); ++r) {
            const std::string out =
                static_cast<std::size_t>(r) < m.outputs.size() ? m.outputs[r] : "y" + std::to_string(r);
            std::cout << "  " << out << " = " << fmt(value[r]) << "  d/dz =";
            for (Eigen::Index c = 0; c < jac.cols(); ++c) {
                std::cout << ' ' << fmt(jac(r, c));
            }
            std::cout << '\n';
        }
        ++shown;
    }
    if (shown == 0) {
        throw FormatError(component.empty()
                              ? "no model in '" + model_path + "' takes " +
                                    std::to_string(z.size()) + " inputs"
                              : "no model named '" + component + "'");
    }
    return 0;
}

// Allocation problem file: key = value lines with
//   effectiveness = rows separated by ';', entries by spaces or commas
//   demand, lower, upper = vectors; weights (diagonal), preference optional
int cmd_allocate(const std::string& path) {
    std::ifstream is(path);
    if (!is) {
        throw FormatError("cannot open '" + path + "'");
    }
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(is, line)) {
        if (const auto h = line.find('#'); h != std::string::npos) {
            line.erase(h);
        }
        const auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        if (eq == std::string::npos) {
            throw FormatError("allocation file: expected key = value, found '" + line + "'");
        }
        std::string key = line.substr(0, eq);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t") + 1);
        kv[key] = line.substr(eq + 1);
    }
    const auto need = [&](const char* key) -> const std::string& {
        const auto it = kv.find(key);
        if (it == kv.end()) {
            throw FormatError(std::string("allocation file: missing key '") + key + "'");
        }
        return it->second;
    };
    for (const auto& [key, _] : kv) {
        if (key != "effectiveness" && key != "demand" && key != "lower" && key != "upper" &&
            key != "weights" && key != "preference") {
            throw FormatError("allocation file: unknown key '" + key + "'");
        }
    }

    std::vector<std::vector<double>> rows;
    std::stringstream rs(need("effectiveness"));
    std::string row;
    while (std::getline(rs, row, ';')) {
        if (row.find_first_not_of(" \t\r") != std::string::npos) {
            rows.push_back(parse_list(row, ','));
        }
    }
    if (rows.empty() || rows.front().empty()) {
        throw FormatError("allocation file: empty effectiveness matrix");
    }
    Mat g(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.front().size()) {
            throw FormatError("allocation file: effectiveness rows differ in length");
        }
        g.row(static_cast<Eigen::Index>(r)) = to_vec(rows[r]).transpose();
    }
    auto problem = pmlr::alloc::AllocationProblem::with_defaults(
        g, to_vec(parse_list(need("demand"), ',')), to_vec(parse_list(need("lower"), ',')),
        to_vec(parse_list(need("upper"), ',')));
    if (kv.count("weights")) {
        const Vec w = to_vec(parse_list(kv["weights"], ','));
        if (w.size() != g.cols()) {
            throw pmlr::DimensionError("allocation file: weights length", w.size(), g.cols());
        }
        problem.weights = w.asDiagonal();
    }
    if (kv.count("preference")) {
        problem.preference = to_vec(parse_list(kv["preference"], ','));
    }
    const auto result = pmlr::alloc::rpi_allocate(problem);
    std::cout << "delta_increment: ";
    print_row(std::cout, result.delta_increment);
    std::cout << "achieved: ";
    print_row(std::cout, result.achieved);
    std::cout << "residual: ";
    print_row(std::cout, result.residual(problem.delta_t_dem));
    std::cout << "saturated:";
    for (const bool s : result.saturated) {
        std::cout << ' ' << (s ? 1 : 0);
    }
    std::cout << "\niterations: " << result.iterations << '\n';
    return 0;
}

pmlr::sim::SimConfig make_config(const std::string& path, const std::vector<std::string>& sets) {
    auto config = path.empty() ? pmlr::sim::SimConfig{} : pmlr::sim::load_config(path);
    for (const auto& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw FormatError("--set expects key=value, found '" + kv + "'");
        }
        config.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return config;
}

void print_metrics_header(std::ostream& os) {
    os << std::left << std::setw(8) << "model" << std::right << std::setw(16) << "RMS E_l [N*m]"
       << std::setw(16) << "RMS E_m [N*m]" << std::setw(16) << "RMS E_n [N*m]" << '\n';
}

void print_metrics(std::ostream& os, const std::string& name, const pmlr::sim::ErrorMetrics& m) {
    os << std::left << std::setw(8) << name << std::right << std::scientific
       << std::setprecision(4);
    for (int i = 0; i < 3; ++i) {
        os << std::setw(16) << m.rms[i];
    }
    os << std::defaultfloat << '\n';
}

int cmd_sim(const std::string& config_path, const std::string& out_path,
            const std::vector<std::string>& sets) {
    const auto config = make_config(config_path, sets);
    const auto trace = pmlr::sim::run_maneuver(config);
    std::ofstream os(out_path, std::ios::binary);
    if (!os) {
        throw FormatError("cannot open '" + out_path + "' for writing");
    }
    pmlr::sim::write_trace_csv(os, trace);
    const auto metrics = pmlr::sim::error_metrics(trace);
    std::cout << "trim: alpha = " << trace.trim.alpha * 180.0 / 3.14159265358979323846
              << " deg, elevator = " << trace.trim.elevator * 180.0 / 3.14159265358979323846
              << " deg\n";
    print_metrics_header(std::cout);
    print_metrics(std::cout, pmlr::airframe::to_string(config.model_kind), metrics);
    std::cout << trace.frames.size() << " frames -> " << out_path << '\n';
    return 0;
}

int cmd_compare(const std::string& config_path, const std::vector<std::string>& sets) {
    auto config = make_config(config_path, sets);
    const auto suite = pmlr::sim::load_suite(config);
    std::cout << "allocation error, gang mode " << static_cast<int>(config.gang) << '\n';
    print_metrics_header(std::cout);
    for (const auto kind : {pmlr::airframe::ModelKind::pmlr, pmlr::airframe::ModelKind::poly}) {
        config.model_kind = kind;
        const auto trace = pmlr::sim::run_maneuver(config, suite);
        print_metrics(std::cout, pmlr::airframe::to_string(kind), pmlr::sim::error_metrics(trace));
    }
    return 0;
}

int cmd_gen_data(std::uint64_t seed, const std::string& out_path) {
    pmlr::io::save_dataset(out_path, pmlr::airframe::synth_tables(seed));
    std::cout << "synthetic dataset (seed " << seed << ") -> " << out_path << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Piecewise multi-linear aerodynamic models and control allocation"};
    app.require_subcommand(1);

    std::string dataset_path;
    std::string model_path;
    std::string out_path;
    std::string method = "regression";
    std::string at;
    std::string component;
    std::string config_path;
    std::string model_kind;
    int gang = 0;
    std::uint64_t seed = 1;
    std::vector<std::string> sets;

    auto* fit = app.add_subcommand("fit", "Fit a PMLR model to every table of a dataset");
    fit->add_option("dataset", dataset_path, "Dataset file")->required();
    fit->add_option("-o,--output", out_path, "Model file to write")->required();
    fit->add_option("--method", method, "regression or iterative")
        ->check(CLI::IsMember({"regression", "iterative"}));

    auto* eval = app.add_subcommand("eval", "Evaluate fitted models and their Jacobians");
    eval->add_option("model", model_path, "Model file")->required();
    eval->add_option("--at", at, "Comma-separated point")->required();
    eval->add_option("--component", component, "Model name (default: all with matching arity)");

    auto* allocate = app.add_subcommand("allocate", "Solve one allocation problem with RPI");
    allocate->add_option("problem", config_path, "Allocation problem file")->required();

    const auto add_sim_options = [&](CLI::App* sub) {
        sub->add_option("--model", model_kind, "Onboard model: pmlr or poly")
            ->check(CLI::IsMember({"pmlr", "poly"}));
        sub->add_option("--gang", gang, "Ganging mode 1 or 2")->check(CLI::IsMember({1, 2}));
        sub->add_option("--set", sets, "Override a config key (key=value), repeatable");
    };
    auto* sim = app.add_subcommand("sim", "Fly the U-turn maneuver and write a CSV trace");
    sim->add_option("config", config_path, "Simulation config file")->required();
    sim->add_option("-o,--output", out_path, "Trace CSV")->required();
    add_sim_options(sim);

    auto* compare = app.add_subcommand("compare", "Compare allocation error of both onboard models");
    compare->add_option("config", config_path, "Simulation config file")->required();
    add_sim_options(compare);

    auto* gen = app.add_subcommand("gen-data", "Write the synthetic aerodynamic dataset");
    gen->add_option("--seed", seed, "Table seed")->required();
    gen->add_option("-o,--output", out_path, "Dataset file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (!model_kind.empty()) {
        sets.push_back("model=" + model_kind);
    }
    if (gang != 0) {
        sets.push_back("gang=" + std::to_string(gang));
    }

    try {
        if (*fit) {
            return cmd_fit(dataset_path, out_path, method);
        }
        if (*eval) {
            return cmd_eval(model_path, at, component);
        }
        if (*allocate) {
            return cmd_allocate(config_path);
        }
        if (*sim) {
            return cmd_sim(config_path, out_path, sets);
        }
        if (*compare) {
            return cmd_compare(config_path, sets);
        }
        if (*gen) {
            return cmd_gen_data(seed, out_path);
        }
    } catch (const pmlr::NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
