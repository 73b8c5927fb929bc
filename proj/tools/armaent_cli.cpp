// Command-line front end: model validation, stability, impulse response,
// covariance, entropy, characteristic function, simulation, and the
// reference-case reproduction report.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "armaent/armaent.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string timestamp_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void emit_error(const std::string& type, const std::string& message) {
    ordered_json err;
    err["error"]["type"] = type;
    err["error"]["message"] = message;
    std::cerr << err.dump() << '\n';
}

struct RunContext {
    std::string command;
    std::string model_path;
    std::map<std::string, std::string> parameters;
    std::vector<std::string> outputs;
    std::string out_path; // empty means stdout

    void emit(const std::string& content) {
        if (out_path.empty()) {
            std::cout << content;
            return;
        }
        std::ofstream f(out_path);
        if (!f) throw std::ios_base::failure("cannot open output file: " + out_path);
        f << content;
        outputs.push_back(out_path);
    }

    void write_manifest() const {
        ordered_json man;
        man["command"] = command;
        man["model_path"] = model_path;
        man["parameters"] = parameters;
        man["outputs"] = outputs;
        man["tool_version"] = armaent::version;
        man["timestamp"] = timestamp_utc();
        const std::string path =
            out_path.empty() ? command + "-manifest.json" : out_path + ".manifest.json";
        std::ofstream f(path);
        if (!f) throw std::ios_base::failure("cannot open manifest file: " + path);
        f << man.dump(2) << '\n';
    }
};

armaent::ArmaControlModel load_validated(const std::string& path) {
    const armaent::ArmaControlModel m = armaent::load_model(path);
    const armaent::ValidationReport rep = armaent::validate(m);
    if (!rep.ok()) {
        ordered_json err;
        err["error"]["type"] = "validation";
        json violations = json::array();
        for (const auto& v : rep.violations)
            violations.push_back({{"field", v.field}, {"message", v.message}});
        err["error"]["violations"] = violations;
        err["error"]["message"] = "model failed validation";
        std::cerr << err.dump() << '\n';
        std::exit(2);
    }
    return m;
}

std::vector<double> parse_alpha_grid(const std::string& spec) {
    std::vector<double> grid;
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        const auto c1 = token.find(':');
        if (c1 == std::string::npos) {
            grid.push_back(std::stod(token));
            continue;
        }
        const auto c2 = token.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw std::invalid_argument("alpha range must be start:step:stop");
        const double start = std::stod(token.substr(0, c1));
        const double step = std::stod(token.substr(c1 + 1, c2 - c1 - 1));
        const double stop = std::stod(token.substr(c2 + 1));
        if (!(step > 0.0)) throw std::invalid_argument("alpha range step must be positive");
        for (double a = start; a <= stop + 1e-12; a += step) grid.push_back(a);
    }
    if (grid.empty()) throw std::invalid_argument("empty alpha grid");
    return grid;
}

std::vector<std::vector<double>> read_points_csv(const std::string& path, std::size_t d) {
    std::ifstream f(path);
    if (!f) throw std::ios_base::failure("cannot open points file: " + path);
    std::vector<std::vector<double>> points;
    std::string line;
    bool first = true;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (first) { // header row
                first = false;
                continue;
            }
            throw std::invalid_argument("points file: non-numeric cell in " + line);
        }
        first = false;
        if (row.size() != d)
            throw std::invalid_argument("points file: expected " + std::to_string(d) +
                                        " columns, got " + std::to_string(row.size()));
        points.push_back(std::move(row));
    }
    return points;
}

json ecf_to_json(const std::vector<armaent::EcfEstimate>& ecf) {
    json arr = json::array();
    for (const auto& e : ecf) {
        json item;
        item["s"] = e.s;
        item["re"] = e.value.real();
        item["im"] = e.value.imag();
        item["std_error"] = e.std_error;
        arr.push_back(std::move(item));
    }
    return arr;
}

json mat_rows(const armaent::Mat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------

int cmd_validate(RunContext& ctx, const std::string& emit_path) {
    const armaent::ArmaControlModel m = armaent::load_model(ctx.model_path);
    const armaent::ValidationReport rep = armaent::validate(m);
    ordered_json out;
    out["ok"] = rep.ok();
    out["violations"] = json::array();
    for (const auto& v : rep.violations)
        out["violations"].push_back({{"field", v.field}, {"message", v.message}});
    ctx.emit(out.dump(2) + "\n");
    if (!rep.ok()) {
        emit_error("validation", "model failed validation");
        ctx.write_manifest();
        return 2;
    }
    if (!emit_path.empty()) {
        armaent::save_model(emit_path, m);
        ctx.outputs.push_back(emit_path);
    }
    ctx.write_manifest();
    return 0;
}

int cmd_stability(RunContext& ctx) {
    const armaent::ArmaControlModel m = load_validated(ctx.model_path);
    const armaent::StabilityVerdict v = armaent::is_stable(m);
    ordered_json out;
    out["stable"] = v.stable;
    out["spectral_radius"] = v.spectral_radius;
    ctx.emit(out.dump(2) + "\n");
    ctx.write_manifest();
    return 0;
}

int cmd_impulse(RunContext& ctx, double tol) {
    const armaent::ArmaControlModel m = load_validated(ctx.model_path);
    const armaent::ImpulseResponse ir = armaent::impulse_response(m, tol);
    std::ostringstream csv;
    csv << "j";
    for (std::size_t i = 0; i < m.d; ++i)
        for (std::size_t j = 0; j < m.d; ++j) csv << ",M_" << i << "_" << j;
    for (std::size_t i = 0; i < m.d; ++i)
        for (std::size_t j = 0; j < m.d; ++j) csv << ",Mstar_" << i << "_" << j;
    csv << "\n";
    for (std::size_t k = 0; k < ir.M.size(); ++k) {
        csv << k;
        for (std::size_t i = 0; i < m.d; ++i)
            for (std::size_t j = 0; j < m.d; ++j) csv << "," << fmt17(ir.M[k](i, j));
        for (std::size_t i = 0; i < m.d; ++i)
            for (std::size_t j = 0; j < m.d; ++j) csv << "," << fmt17(ir.Mstar[k](i, j));
        csv << "\n";
    }
    ctx.parameters["tail_bound"] = fmt17(ir.tail_bound);
    ctx.emit(csv.str());
    ctx.write_manifest();
    return 0;
}

int cmd_covariance(RunContext& ctx, std::size_t tau_max, const std::string& method, double tol,
                   const std::string& format) {
    const armaent::ArmaControlModel m = load_validated(ctx.model_path);
    const armaent::StationaryCovariance cov =
        method == "series" ? armaent::covariance_series(m, tol, tau_max)
                           : armaent::autocovariance(m, tau_max, tol);
    if (format == "json") {
        ordered_json out;
        out["method"] = method;
        out["residual"] = cov.residual;
        out["phi"] = json::array();
        for (const auto& phi : cov.phi) out["phi"].push_back(mat_rows(phi));
        ctx.emit(out.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        csv << "tau,row,col,value\n";
        for (std::size_t tau = 0; tau < cov.phi.size(); ++tau)
            for (std::size_t i = 0; i < m.d; ++i)
                for (std::size_t j = 0; j < m.d; ++j)
                    csv << tau << "," << i << "," << j << "," << fmt17(cov.phi[tau](i, j))
                        << "\n";
        ctx.emit(csv.str());
    }
    ctx.write_manifest();
    return 0;
}

int cmd_entropy(RunContext& ctx, const std::string& alpha_spec, bool bound,
                const std::string& format) {
    const armaent::ArmaControlModel m = load_validated(ctx.model_path);
    const std::vector<double> grid = parse_alpha_grid(alpha_spec);
    std::vector<armaent::EntropyReport> reports;
    for (double a : grid)
        reports.push_back(bound ? armaent::model_entropy_bound(m, a)
                                : armaent::model_entropy(m, a));
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : reports) {
            ordered_json item;
            item["alpha"] = r.alpha;
            item["value"] = r.value;
            item["kind"] = armaent::entropy_kind_name(r.kind);
            item["formula"] = r.formula;
            item["components"] = r.components;
            arr.push_back(std::move(item));
        }
        ctx.emit(arr.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        csv << "alpha,value,kind\n";
        for (const auto& r : reports)
            csv << fmt17(r.alpha) << "," << fmt17(r.value) << ","
                << armaent::entropy_kind_name(r.kind) << "\n";
        ctx.emit(csv.str());
    }
    ctx.write_manifest();
    return 0;
}

int cmd_charfn(RunContext& ctx, const std::string& points_path, double tol) {
    const armaent::ArmaControlModel m = load_validated(ctx.model_path);
    const auto points = read_points_csv(points_path, m.d);
    std::ostringstream csv;
    for (std::size_t i = 0; i < m.d; ++i) csv << "s_" << i << ",";
    csv << "re,im,truncation_error\n";
    for (const auto& s : points) {
        const armaent::CharFnValue v = armaent::charfn(m, s, tol);
        for (double x : s) csv << fmt17(x) << ",";
        csv << fmt17(v.value.real()) << "," << fmt17(v.value.imag()) << ","
            << fmt17(v.truncation_error) << "\n";
    }
    ctx.emit(csv.str());
    ctx.write_manifest();
    return 0;
}

int cmd_simulate(RunContext& ctx, const armaent::SimConfig& base_cfg,
                 const std::string& ecf_path, const std::string& dump_path) {
    const armaent::ArmaControlModel m = load_validated(ctx.model_path);
    armaent::SimConfig cfg = base_cfg;
    if (!ecf_path.empty()) cfg.ecf_points = read_points_csv(ecf_path, m.d);

    std::ofstream dump;
    armaent::SampleSink sink;
    if (!dump_path.empty()) {
        dump.open(dump_path);
        if (!dump) throw std::ios_base::failure("cannot open path dump file: " + dump_path);
        dump << "replicate,t";
        for (std::size_t i = 0; i < m.d; ++i) dump << ",x_" << i;
        dump << "\n";
        sink = [&dump](std::size_t rep, std::size_t t, const std::vector<double>& x) {
            dump << rep << "," << t;
            for (double v : x) dump << "," << fmt17(v);
            dump << "\n";
        };
        ctx.outputs.push_back(dump_path);
    }
    const armaent::EmpiricalSummary sum = armaent::simulate_path(m, cfg, sink);

    ordered_json out;
    out["n_effective"] = sum.n_effective;
    out["mean"] = sum.mean;
    out["covariance"] = sum.covariance ? mat_rows(*sum.covariance) : json();
    out["covariance_se"] = sum.covariance_se ? mat_rows(*sum.covariance_se) : json();
    out["ecf"] = ecf_to_json(sum.ecf);
    ctx.emit(out.dump(2) + "\n");
    ctx.write_manifest();
    return 0;
}

int cmd_reproduce(RunContext& ctx, int example) {
    const armaent::ReproduceReport rep = armaent::reproduce_report(example);
    std::ostringstream table;
    table << rep.title << "\n";
    char line[512];
    std::snprintf(line, sizeof(line), "%-42s %14s %14s %12s %-6s %s\n", "row", "computed",
                  "reference", "|deviation|", "status", "note");
    table << line;
    for (const auto& r : rep.rows) {
        std::snprintf(line, sizeof(line), "%-42s %14.6g %14.6g %12.4g %-6s %s\n",
                      r.label.c_str(), r.computed, r.reference, r.deviation,
                      armaent::row_status_name(r.status), r.note.c_str());
        table << line;
    }
    ctx.emit(table.str());
    ctx.write_manifest();
    return rep.any_fail() ? 3 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"distributions, covariances and Renyi entropies of multivariate ARMA "
                 "control systems"};
    app.set_version_flag("--version", armaent::version);
    app.require_subcommand(1);

    RunContext ctx;
    std::string emit_path, method = "lyapunov", format = "csv", alpha_spec = "1";
    std::string points_path, ecf_path, dump_path;
    double tol = 1e-10;
    std::size_t tau_max = 0;
    bool bound = false;
    int example = 1;
    armaent::SimConfig sim_cfg;
    sim_cfg.n_samples = 10000;

    auto add_model_arg = [&ctx](CLI::App* sub) {
        sub->add_option("model", ctx.model_path, "model description JSON")->required();
    };
    auto add_out = [&ctx](CLI::App* sub) {
        sub->add_option("--out", ctx.out_path, "write output to this file instead of stdout");
    };

    CLI::App* validate = app.add_subcommand("validate", "check a model description");
    add_model_arg(validate);
    add_out(validate);
    validate->add_option("--emit-normalized", emit_path, "write the normalized model JSON");

    CLI::App* stability = app.add_subcommand("stability", "stability verdict and radius");
    add_model_arg(stability);
    add_out(stability);

    CLI::App* impulse = app.add_subcommand("impulse", "impulse-response dump as CSV");
    add_model_arg(impulse);
    add_out(impulse);
    impulse->add_option("--tol", tol, "certified tail tolerance");

    CLI::App* covariance = app.add_subcommand("covariance", "stationary autocovariances");
    add_model_arg(covariance);
    add_out(covariance);
    covariance->add_option("--tau-max", tau_max, "largest lag to emit");
    covariance->add_option("--method", method, "lyapunov or series")
        ->check(CLI::IsMember({"lyapunov", "series"}));
    covariance->add_option("--tol", tol, "series tolerance");
    covariance->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* entropy = app.add_subcommand("entropy", "Renyi entropy or its bound");
    add_model_arg(entropy);
    add_out(entropy);
    entropy->add_option("--alpha", alpha_spec, "comma list and/or start:step:stop ranges");
    entropy->add_flag("--bound", bound, "emit the covariance-based upper bound");
    entropy->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* charfn = app.add_subcommand("charfn", "characteristic function at given points");
    add_model_arg(charfn);
    add_out(charfn);
    charfn->add_option("--points", points_path, "CSV of frequency vectors")->required();
    charfn->add_option("--tol", tol, "truncation tolerance");

    CLI::App* simulate = app.add_subcommand("simulate", "seeded Monte Carlo summary");
    add_model_arg(simulate);
    add_out(simulate);
    simulate->add_option("--seed", sim_cfg.seed, "stream seed");
    simulate->add_option("--samples", sim_cfg.n_samples, "samples per replicate");
    simulate->add_option("--burn-in", sim_cfg.burn_in, "override the derived burn-in");
    simulate->add_option("--replicates", sim_cfg.replicate_count, "independent replicates");
    simulate->add_option("--ecf-points", ecf_path, "CSV of frequency vectors for the ecf");
    simulate->add_option("--dump-path", dump_path, "write the raw path as CSV");

    CLI::App* reproduce = app.add_subcommand("reproduce", "reference-case comparison report");
    reproduce->add_option("example", example, "reference case number")
        ->required()
        ->check(CLI::Range(1, 3));
    add_out(reproduce);

    CLI11_PARSE(app, argc, argv);

    CLI::App* active = app.get_subcommands().front();
    ctx.command = active->get_name();
    for (const auto* opt : active->get_options()) {
        if (opt->count() > 0 && opt->get_name().rfind("--", 0) == 0)
            ctx.parameters[opt->get_name().substr(2)] = opt->as<std::string>();
    }

    try {
        if (validate->parsed()) return cmd_validate(ctx, emit_path);
        if (stability->parsed()) return cmd_stability(ctx);
        if (impulse->parsed()) return cmd_impulse(ctx, tol);
        if (covariance->parsed()) return cmd_covariance(ctx, tau_max, method, tol, format);
        if (entropy->parsed()) return cmd_entropy(ctx, alpha_spec, bound, format);
        if (charfn->parsed()) return cmd_charfn(ctx, points_path, tol);
        if (simulate->parsed()) return cmd_simulate(ctx, sim_cfg, ecf_path, dump_path);
        if (reproduce->parsed()) return cmd_reproduce(ctx, example);
    } catch (const armaent::domain_error& e) {
        emit_error("domain", e.what());
        return 3;
    } catch (const armaent::numeric_error& e) {
        emit_error("numeric", e.what());
        return 3;
    } catch (const std::ios_base::failure& e) {
        emit_error("io", e.what());
        return 4;
    } catch (const nlohmann::json::exception& e) {
        emit_error("schema", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        emit_error("validation", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 1;
    }
    return 0;
}
