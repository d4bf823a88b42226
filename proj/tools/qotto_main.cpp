#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qotto/csvio.hpp"
#include "qotto/cycle.hpp"
#include "qotto/oracle.hpp"
#include "qotto/thermo.hpp"

namespace {

constexpr const char* k_version = "qotto 1.0.0";
constexpr int k_ensemble_size = 100;
constexpr int k_stroke_samples = 401;

struct Options {
    double omega1_ghz = 6.0;
    double omega2_ghz = 1.0;
    double omega_ghz = -6.0;
    double alpha_rad = 0.0;
    double th_k = 1.0;
    double tc_k = 0.1;
    double lambda = 0.5;
    std::string lambda_grid;
    std::string omega_grid;
    std::string alpha_list;
    std::string units = "si";
    std::string binding = "stage";
    int jobs = 0;
    std::string out;
    std::uint64_t seed = 424242;
    std::string config;
    bool inject_error = false;
};

struct Command {
    CLI::App* app = nullptr;
    std::map<std::string, CLI::Option*> flags;
    std::map<std::string, std::function<void(const std::string&)>> setters;
};

double parse_double_value(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return parsed;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad value '" + value + "' for key '" + key + "'");
    }
}

void register_common(Command& cmd, Options& o) {
    auto& app = *cmd.app;
    auto add_double = [&](const std::string& key, const std::string& names, double& slot,
                          const std::string& help) {
        cmd.flags[key] = app.add_option(names, slot, help);
        cmd.setters[key] = [&slot, key](const std::string& v) {
            slot = parse_double_value(key, v);
        };
    };
    auto add_string = [&](const std::string& key, const std::string& names, std::string& slot,
                          const std::string& help) {
        cmd.flags[key] = app.add_option(names, slot, help);
        cmd.setters[key] = [&slot](const std::string& v) { slot = v; };
    };

    add_double("omega1-ghz", "--omega1-ghz", o.omega1_ghz, "hot-side field intensity (GHz)");
    add_double("omega2-ghz", "--omega2-ghz", o.omega2_ghz, "cold-side field intensity (GHz)");
    add_double("omega-ghz", "--omega-ghz", o.omega_ghz, "field rotation rate (GHz, signed)");
    add_double("alpha-rad", "--alpha-rad,--alpha", o.alpha_rad, "field incline angle (rad)");
    add_double("th-k", "--th-k", o.th_k, "hot bath temperature (K)");
    add_double("tc-k", "--tc-k", o.tc_k, "cold bath temperature (K)");
    add_double("lambda", "--lambda", o.lambda, "stroke length in Rabi periods");
    add_string("units", "--units", o.units, "unit system: si or natural (hbar = k_B = 1)");
    add_string("lambda-binding", "--lambda-binding", o.binding,
               "which drive sets each stroke clock: stage or swapped");
    cmd.flags["jobs"] = app.add_option("--jobs", o.jobs, "worker threads (<= 0: all)");
    cmd.setters["jobs"] = [&o](const std::string& v) {
        o.jobs = static_cast<int>(parse_double_value("jobs", v));
    };
    add_string("out", "--out", o.out, "output CSV path (default: stdout)");
    cmd.flags["seed"] = app.add_option("--seed", o.seed, "ensemble seed");
    cmd.setters["seed"] = [&o](const std::string& v) {
        o.seed = static_cast<std::uint64_t>(parse_double_value("seed", v));
    };
    app.add_option("--config", o.config, "key=value parameter file (CLI flags win)");
}

void register_grid(Command& cmd, Options& o) {
    auto add_string = [&](const std::string& key, const std::string& names, std::string& slot,
                          const std::string& help) {
        cmd.flags[key] = cmd.app->add_option(names, slot, help);
        cmd.setters[key] = [&slot](const std::string& v) { slot = v; };
    };
    add_string("lambda-grid", "--lambda-grid", o.lambda_grid, "lambda axis start:stop:count");
    add_string("omega-grid", "--omega-grid", o.omega_grid, "omega axis start:stop:count (GHz)");
    add_string("alpha-list", "--alpha-list", o.alpha_list, "alpha values v1,v2,... (rad)");
}

void apply_config(const Command& cmd, const Options& o) {
    if (o.config.empty()) return;
    for (const auto& [key, value] : qotto::parse_config_file(o.config)) {
        const auto setter = cmd.setters.find(key);
        if (setter == cmd.setters.end()) {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
        if (cmd.flags.at(key)->count() > 0) continue;
        setter->second(value);
    }
}

struct Resolved {
    qotto::Units units;
    double scale;  // rad/s per CLI frequency unit
    qotto::CycleParams base;
};

Resolved resolve(const Options& o) {
    if (o.units != "si" && o.units != "natural") {
        throw std::invalid_argument("units must be 'si' or 'natural'");
    }
    if (o.binding != "stage" && o.binding != "swapped") {
        throw std::invalid_argument("lambda-binding must be 'stage' or 'swapped'");
    }
    const qotto::Units u = o.units == "si" ? qotto::si_units() : qotto::natural_units();
    const double scale = o.units == "si" ? 1e9 : 1.0;
    const qotto::LambdaBinding binding = o.binding == "stage" ? qotto::LambdaBinding::stage
                                                              : qotto::LambdaBinding::swapped;
    qotto::CycleParams base{o.omega1_ghz * scale,
                            o.omega2_ghz * scale,
                            o.alpha_rad,
                            o.omega_ghz * scale,
                            o.lambda,
                            qotto::make_bath(o.th_k, u),
                            qotto::make_bath(o.tc_k, u),
                            binding,
                            u};
    qotto::validate(base);
    return {u, scale, base};
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) {
                throw std::invalid_argument("cannot open output file '" + path + "'");
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

// Provenance echo: physics parameters only, so the byte content is invariant
// under --jobs and --out.
void write_metadata(std::ostream& os, const Options& o) {
    os << "# " << k_version << "\n";
    os << "# seed=" << o.seed << "\n";
    os << "# params:";
    os << " omega1-ghz=" << qotto::format_double(o.omega1_ghz);
    os << " omega2-ghz=" << qotto::format_double(o.omega2_ghz);
    os << " omega-ghz=" << qotto::format_double(o.omega_ghz);
    os << " alpha-rad=" << qotto::format_double(o.alpha_rad);
    os << " th-k=" << qotto::format_double(o.th_k);
    os << " tc-k=" << qotto::format_double(o.tc_k);
    os << " lambda=" << qotto::format_double(o.lambda);
    if (!o.lambda_grid.empty()) os << " lambda-grid=" << o.lambda_grid;
    if (!o.omega_grid.empty()) os << " omega-grid=" << o.omega_grid;
    if (!o.alpha_list.empty()) os << " alpha-list=" << o.alpha_list;
    os << " units=" << o.units;
    os << " lambda-binding=" << o.binding;
    os << "\n";
}

constexpr const char* k_report_columns =
    "lambda,omega_ghz,alpha_rad,w_net,w_L,w_S,q_h,q_c,eta,eta_otto,t2_eff,t4_eff,entropy_gen,"
    "positive_work";

void write_report_fields(std::ostream& os, double lambda, double omega_ghz, double alpha,
                         const qotto::CycleReport& r) {
    os << qotto::format_double(lambda) << ',' << qotto::format_double(omega_ghz) << ','
       << qotto::format_double(alpha) << ',' << qotto::format_double(r.w_net) << ','
       << qotto::format_double(r.w_l) << ',' << qotto::format_double(r.w_s) << ','
       << qotto::format_double(r.q_h) << ',' << qotto::format_double(r.q_c) << ','
       << qotto::format_double(r.eta) << ',' << qotto::format_double(r.eta_otto) << ','
       << qotto::format_double(r.t2_eff) << ',' << qotto::format_double(r.t4_eff) << ','
       << qotto::format_double(r.entropy_gen) << ','
       << (r.positive_work ? "true" : "false");
}

std::string sanitize(std::string text) {
    for (char& c : text) {
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    }
    return text;
}

int cmd_cycle(const Options& o) {
    const Resolved rv = resolve(o);
    Output output(o.out);
    std::ostream& os = output.stream();
    write_metadata(os, o);
    os << k_report_columns << "\n";
    write_report_fields(os, o.lambda, o.omega_ghz, o.alpha_rad, qotto::run_cycle(rv.base));
    os << "\n";
    return 0;
}

int cmd_sweep(const Options& o) {
    if (o.lambda_grid.empty() && o.omega_grid.empty() && o.alpha_list.empty()) {
        throw std::invalid_argument(
            "sweep needs at least one of --lambda-grid, --omega-grid, --alpha-list");
    }
    const Resolved rv = resolve(o);
    qotto::SweepGrid grid;
    grid.lambda = o.lambda_grid.empty() ? std::vector<double>{o.lambda}
                                        : qotto::parse_grid(o.lambda_grid);
    const std::vector<double> omega_ghz_axis =
        o.omega_grid.empty() ? std::vector<double>{o.omega_ghz} : qotto::parse_grid(o.omega_grid);
    grid.omega.reserve(omega_ghz_axis.size());
    for (double w : omega_ghz_axis) grid.omega.push_back(w * rv.scale);
    grid.alpha = o.alpha_list.empty() ? std::vector<double>{o.alpha_rad}
                                      : qotto::parse_list(o.alpha_list);

    const std::vector<qotto::SweepPoint> points = qotto::sweep(rv.base, grid, o.jobs);

    Output output(o.out);
    std::ostream& os = output.stream();
    write_metadata(os, o);
    os << k_report_columns << ",status\n";
    for (const qotto::SweepPoint& pt : points) {
        write_report_fields(os, pt.lambda, pt.omega / rv.scale, pt.alpha, pt.report);
        os << ',' << (pt.ok ? "ok" : sanitize(pt.error)) << "\n";
    }
    return 0;
}

int cmd_stroke(const Options& o) {
    const Resolved rv = resolve(o);
    const auto tau = qotto::stroke_durations(rv.base);
    const qotto::FieldProtocol p =
        qotto::make_protocol(rv.base.omega2, rv.base.alpha, rv.base.omega, tau[0]);
    const qotto::StrokeLedger ledger =
        qotto::stroke_ledger(p, rv.base.hot, rv.base.omega1, k_stroke_samples, rv.units);

    Output output(o.out);
    std::ostream& os = output.stream();
    write_metadata(os, o);
    os << "t,q_dot_diag,coherence_term,w_dot,w_l_cum,adiabaticity_residual\n";
    for (const qotto::PowerSplit& split : ledger.trace) {
        const double w_l_cum = qotto::coherence_work(rv.base.omega2, rv.base.omega1,
                                                     rv.base.alpha, rv.base.hot, split.at_time,
                                                     rv.base.omega, rv.units);
        os << qotto::format_double(split.at_time) << ','
           << qotto::format_double(split.q_dot_diag) << ','
           << qotto::format_double(split.coherence_term) << ','
           << qotto::format_double(split.w_dot) << ',' << qotto::format_double(w_l_cum) << ','
           << qotto::format_double(split.q_dot) << "\n";
    }
    return 0;
}

int cmd_validate(const Options& o) {
    const qotto::Units u = o.units == "natural" ? qotto::natural_units() : qotto::si_units();
    if (o.units != "si" && o.units != "natural") {
        throw std::invalid_argument("units must be 'si' or 'natural'");
    }
    const std::vector<qotto::CheckResult> checks =
        qotto::run_validation(o.seed, k_ensemble_size, o.inject_error, o.jobs, u);

    Output output(o.out);
    std::ostream& os = output.stream();
    os << "# " << k_version << "\n";
    os << "# seed=" << o.seed << " ensemble=" << k_ensemble_size << " units=" << o.units << "\n";
    os << "check,cases,max_err,tol,pass,worst_alpha,worst_lambda,worst_omega_ghz\n";
    bool all = true;
    for (const qotto::CheckResult& c : checks) {
        all = all && c.pass;
        os << c.name << ',' << c.cases << ',' << qotto::format_double(c.max_err) << ','
           << qotto::format_double(c.tol) << ',' << (c.pass ? "pass" : "fail") << ','
           << qotto::format_double(c.worst_alpha) << ',' << qotto::format_double(c.worst_lambda)
           << ',' << qotto::format_double(c.worst_omega) << "\n";
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exactly solvable spin-1/2 Otto engine driven by a rotating field"};
    app.set_version_flag("--version", k_version);
    app.require_subcommand(1);

    Options o;
    Command cycle{app.add_subcommand("cycle", "run one cycle and print its report row")};
    register_common(cycle, o);
    Command sweep{app.add_subcommand("sweep", "run a lambda/omega/alpha grid of cycles")};
    register_common(sweep, o);
    register_grid(sweep, o);
    Command stroke{app.add_subcommand("stroke", "time-resolved trace of the compression stroke")};
    register_common(stroke, o);
    Command validate{app.add_subcommand("validate", "run the oracle check suite")};
    register_common(validate, o);
    validate.app->add_flag("--inject-error", o.inject_error,
                           "perturb one check (negative control)");

    try {
        app.parse(argc, argv);
        const Command* active = nullptr;
        for (const Command* c : {&cycle, &sweep, &stroke, &validate}) {
            if (c->app->parsed()) active = c;
        }
        apply_config(*active, o);
        if (cycle.app->parsed()) return cmd_cycle(o);
        if (sweep.app->parsed()) return cmd_sweep(o);
        if (stroke.app->parsed()) return cmd_stroke(o);
        return cmd_validate(o);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
