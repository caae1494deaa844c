#include "dgate/cli.hpp"
#include "dgate/errors.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace dgate {

namespace {

std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v)
{
    double out = 0.0;
    const char* end = v.data() + v.size();
    auto [p, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || p != end || !std::isfinite(out))
        throw ConfigError("key '" + key + "': '" + v + "' is not a number");
    return out;
}

int to_int(const std::string& key, const std::string& v)
{
    int out = 0;
    const char* end = v.data() + v.size();
    auto [p, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || p != end) throw ConfigError("key '" + key + "': '" + v + "' is not an integer");
    return out;
}

bool to_bool(const std::string& key, const std::string& v)
{
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw ConfigError("key '" + key + "': '" + v + "' is not a boolean");
}

std::vector<std::string> split_list(const std::string& v)
{
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

const std::map<std::string, double>& frequency_units()
{
    static const std::map<std::string, double> u{{"rad_s", 1.0},
                                                 {"hz_2pi", kTwoPi},
                                                 {"khz_2pi", kTwoPi * 1e3},
                                                 {"mhz_2pi", kTwoPi * 1e6},
                                                 {"ghz_2pi", kTwoPi * 1e9}};
    return u;
}

struct Pending {
    std::optional<double> omega_e_ratio;
};

using Setter = std::function<void(RunConfig&, Pending&, const std::string& key, const std::string& v)>;

const std::map<std::string, Setter>& setters()
{
    static const std::map<std::string, Setter> s = [] {
        std::map<std::string, Setter> m;
        m["plan.K"] = [](RunConfig& c, Pending&, auto& k, auto& v) { c.plan.params.K = to_int(k, v); };
        m["plan.n_phase_flips"] = [](RunConfig& c, Pending&, auto& k, auto& v) { c.plan.n_phase_flips = to_int(k, v); };
        m["plan.terms"] = [](RunConfig& c, Pending&, auto&, auto& v) {
            const auto items = split_list(v);
            c.plan.enabled_terms = std::set<std::string>(items.begin(), items.end());
        };
        m["plan.initial_state"] = [](RunConfig& c, Pending&, auto&, auto& v) { c.plan.initial_spins = v; };
        m["plan.initial_phonons"] = [](RunConfig& c, Pending&, auto& k, auto& v) { c.plan.initial_phonons = to_int(k, v); };
        m["plan.flip_convention"] = [](RunConfig& c, Pending&, auto& k, auto& v) {
            try {
                c.plan.convention = parse_convention(v);
            } catch (const ArgumentError&) {
                throw ConfigError("key '" + k + "': unknown convention '" + v + "'");
            }
        };
        m["plan.pi_pulse"] = [](RunConfig& c, Pending&, auto& k, auto& v) {
            if (v == "none") c.plan.pi_pulse.reset();
            else if (v == "x" || v == "y" || v == "z") c.plan.pi_pulse = parse_axis(v);
            else throw ConfigError("key '" + k + "': expected none, x, y or z");
        };
        m["plan.laser"] = [](RunConfig& c, Pending&, auto& k, auto& v) { c.plan.laser = to_bool(k, v); };
        m["plan.electric_rwa"] = [](RunConfig& c, Pending&, auto& k, auto& v) { c.plan.electric_rwa = to_bool(k, v); };
        m["plan.n_ions"] = [](RunConfig& c, Pending&, auto& k, auto& v) {
            c.plan.n_ions = to_int(k, v);
            c.plan.initial_spins = std::string(std::max(0, c.plan.n_ions), 'd');
        };
        m["plan.phonon_cutoff"] = [](RunConfig& c, Pending&, auto& k, auto& v) { c.plan.phonon_cutoff = to_int(k, v); };
        m["params.eta"] = [](RunConfig& c, Pending&, auto& k, auto& v) { c.plan.params.eta = to_double(k, v); };
        m["params.eta_laser"] = [](RunConfig& c, Pending&, auto& k, auto& v) { c.plan.params.eta_laser = to_double(k, v); };
        m["params.omega_e_ratio"] = [](RunConfig&, Pending& p, auto& k, auto& v) {
            const double r = to_double(k, v);
            if (r <= 0) throw ConfigError("key '" + k + "' must be > 0");
            p.omega_e_ratio = r;
        };
        m["params.ion_mass_amu"] = [](RunConfig& c, Pending&, auto& k, auto& v) {
            c.plan.params.ion_mass = to_double(k, v) * constants::amu;
        };
        m["params.b_gradient"] = [](RunConfig& c, Pending&, auto& k, auto& v) { c.plan.params.b_gradient = to_double(k, v); };
        m["params.g_factor"] = [](RunConfig& c, Pending&, auto& k, auto& v) { c.plan.params.g_factor = to_double(k, v); };
        m["integrator.method"] = [](RunConfig& c, Pending&, auto& k, auto& v) {
            try {
                c.integrator.method = parse_method(v);
            } catch (const ArgumentError&) {
                throw ConfigError("key '" + k + "': unknown method '" + v + "'");
            }
        };
        m["integrator.order"] = [](RunConfig& c, Pending&, auto& k, auto& v) { c.integrator.order = to_int(k, v); };
        m["integrator.steps_per_period"] = [](RunConfig& c, Pending&, auto& k, auto& v) { c.integrator.steps_per_period = to_double(k, v); };
        m["integrator.max_step"] = [](RunConfig& c, Pending&, auto& k, auto& v) { c.integrator.max_step = to_double(k, v); };
        m["integrator.tolerance"] = [](RunConfig& c, Pending&, auto& k, auto& v) { c.integrator.tolerance = to_double(k, v); };
        m["integrator.output_points"] = [](RunConfig& c, Pending&, auto& k, auto& v) { c.integrator.output_points = to_int(k, v); };
        m["noise.s_bb_20khz"] = [](RunConfig& c, Pending&, auto& k, auto& v) { c.noise.s_bb_20khz = to_double(k, v); };
        m["noise.rabi_fraction"] = [](RunConfig& c, Pending&, auto& k, auto& v) { c.noise.rabi_fraction = to_double(k, v); };
        m["noise.rabi_r_fraction"] = [](RunConfig& c, Pending&, auto& k, auto& v) { c.noise.rabi_r_fraction = to_double(k, v); };
        m["noise.echo"] = [](RunConfig& c, Pending&, auto& k, auto& v) { c.noise.echo = to_bool(k, v); };
        m["output.dir"] = [](RunConfig& c, Pending&, auto&, auto& v) { c.out_dir = v; };
        m["run.parallel_jobs"] = [](RunConfig& c, Pending&, auto& k, auto& v) { c.parallel_jobs = to_int(k, v); };
        m["sweep.parameter"] = [](RunConfig& c, Pending&, auto&, auto& v) {
            if (!c.sweep) c.sweep.emplace();
            c.sweep->parameter = v;
        };
        m["sweep.values"] = [](RunConfig& c, Pending&, auto&, auto& v) {
            if (!c.sweep) c.sweep.emplace();
            c.sweep->values = split_list(v);
        };
        m["validate.slack"] = [](RunConfig& c, Pending&, auto& k, auto& v) { c.validate_slack = to_double(k, v); };

        // Frequencies: params.<name>.<unit>
        const std::map<std::string, double PhysicalParams::*> freq{
            {"nu", &PhysicalParams::nu},
            {"omega_r", &PhysicalParams::omega_r},
            {"delta_omega0", &PhysicalParams::delta_omega0},
            {"omega_e", &PhysicalParams::omega_E},
            {"omega0", &PhysicalParams::omega0}};
        for (const auto& [name, member] : freq)
            for (const auto& [unit, scale] : frequency_units()) {
                const double sc = scale;
                const auto mem = member;
                m["params." + name + "." + unit] = [sc, mem](RunConfig& c, Pending&, auto& k, auto& v) {
                    c.plan.params.*mem = to_double(k, v) * sc;
                };
            }
        return m;
    }();
    return s;
}

std::string canonical_sweep_key(const std::string& p)
{
    static const std::map<std::string, std::string> alias{
        {"n_phase_flips", "plan.n_phase_flips"}, {"K", "plan.K"}, {"phonon_cutoff", "plan.phonon_cutoff"},
        {"eta", "params.eta"}};
    const auto it = alias.find(p);
    return it == alias.end() ? p : it->second;
}

} // namespace

std::vector<std::string> known_keys()
{
    std::vector<std::string> k{"scenario"};
    for (const auto& [key, _] : setters()) k.push_back(key);
    return k;
}

KeyValues parse_key_values(const std::string& text)
{
    KeyValues kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto sep = line.find_first_of(":=");
        if (sep == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key: value'");
        const std::string key = trim(line.substr(0, sep));
        const std::string value = trim(line.substr(sep + 1));
        if (key != "scenario" && !setters().count(key))
            throw ConfigError("unknown config key '" + key + "' (line " + std::to_string(lineno) + ")");
        for (const auto& [k, _] : kv)
            if (k == key) throw ConfigError("duplicate config key '" + key + "'");
        kv.emplace_back(key, value);
    }
    return kv;
}

RunConfig build_config(const KeyValues& kv)
{
    RunConfig c;
    c.raw = kv;
    for (const auto& [k, v] : kv)
        if (k == "scenario") c.scenario = v;
    try {
        c.plan = named_scenario(c.scenario);
    } catch (const ArgumentError& e) {
        throw ConfigError("key 'scenario': " + std::string(e.what()));
    }
    Pending pending;
    if (c.scenario == "electric-field") pending.omega_e_ratio = 30.0;
    bool explicit_omega_e = false;
    for (const auto& [k, v] : kv) {
        if (k == "scenario") continue;
        const auto it = setters().find(k);
        if (it == setters().end()) throw ConfigError("unknown config key '" + k + "'");
        it->second(c, pending, k, v);
        if (k.rfind("params.omega_e.", 0) == 0) explicit_omega_e = true;
    }
    if (pending.omega_e_ratio && !explicit_omega_e) c.plan.params.omega_E = c.plan.params.omega_r / *pending.omega_e_ratio;
    if (c.sweep) {
        if (c.sweep->parameter.empty()) throw ConfigError("key 'sweep.parameter' is required with sweep.values");
        c.sweep->parameter = canonical_sweep_key(c.sweep->parameter);
        if (!setters().count(c.sweep->parameter))
            throw ConfigError("key 'sweep.parameter': unknown parameter '" + c.sweep->parameter + "'");
        if (c.sweep->values.empty()) throw ConfigError("key 'sweep.values' must list at least one value");
    }
    if (c.parallel_jobs < 1) throw ConfigError("key 'run.parallel_jobs' must be >= 1");
    if (c.plan.n_ions < 1 || c.plan.n_ions > 10) throw ConfigError("key 'plan.n_ions' must be in 1..10");
    if (c.plan.phonon_cutoff < 2) throw ConfigError("key 'plan.phonon_cutoff' must be >= 2");
    if (c.plan.params.K < 1) throw ConfigError("key 'plan.K' must be >= 1");
    c.plan.close_loop();
    try {
        c.plan.validate();
    } catch (const ArgumentError& e) {
        throw ConfigError(e.what());
    }
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return build_config(parse_key_values(ss.str()));
}

std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    if (ec != std::errc()) return "nan";
    return std::string(buf, p);
}

std::string trajectory_csv(const Trajectory& tr)
{
    std::string out = "t_s,fidelity,p_dd,p_uu,re_rho_dd_uu,im_rho_dd_uu,mean_phonons\n";
    const Observables& o = tr.obs;
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        for (double v : {tr.times[i], o.fidelity[i], o.p_dd[i], o.p_uu[i], o.re_dd_uu[i], o.im_dd_uu[i]}) {
            out += format_number(v);
            out += ',';
        }
        out += format_number(o.mean_phonons[i]);
        out += '\n';
    }
    return out;
}

static std::string khz(double w) { return format_number(w / kTwoPi / 1e3) + " kHz (x 2pi)"; }

std::string summary_text(const RunConfig& cfg, const ScenarioSummary& s, const PulseSchedule& sched)
{
    const PhysicalParams& p = cfg.plan.params;
    std::ostringstream os;
    os << "scenario: " << s.name << '\n'
       << "final_fidelity: " << format_number(s.final_fidelity) << '\n'
       << "infidelity: " << format_number(s.infidelity) << '\n'
       << "peak_mean_phonons: " << format_number(s.peak_mean_phonons) << '\n'
       << "final_mean_phonons: " << format_number(s.final_mean_phonons) << '\n'
       << "spin_purity: " << format_number(s.spin_purity) << '\n'
       << "max_norm_drift: " << format_number(s.max_norm_drift) << '\n'
       << "gate_time_s: " << format_number(s.gate_time) << '\n'
       << "K: " << s.K << '\n'
       << "\n[parameters]\n"
       << "nu: " << khz(p.nu) << '\n'
       << "eta: " << format_number(p.eta) << '\n'
       << "omega_drive: " << khz(p.omega_drive) << '\n'
       << "epsilon: " << khz(p.epsilon()) << '\n'
       << "omega_r: " << khz(p.omega_r) << '\n'
       << "delta_omega0: " << khz(p.delta_omega0) << '\n'
       << "omega_e: " << khz(p.omega_E) << '\n';
    if (cfg.plan.laser) os << "eta_laser: " << format_number(p.eta_laser) << '\n';
    os << "n_ions: " << cfg.plan.n_ions << '\n'
       << "phonon_cutoff: " << cfg.plan.phonon_cutoff << '\n'
       << "initial_state: |" << cfg.plan.initial_spins << "> (x) |" << cfg.plan.initial_phonons << ">\n"
       << "\n[terms]\n";
    for (const auto& t : s.enabled_terms) os << t << '\n';
    if (s.enabled_terms.empty()) os << "(none)\n";
    os << "\n[schedule]\n"
       << "phase_flips: " << s.n_phase_flips << '\n'
       << "flip_convention: " << convention_name(sched.convention) << '\n';
    for (const auto& e : sched.events)
        os << (e.kind == EventKind::rf_phase_flip ? "rf_phase_flip" : "pi_pulse") << " at "
           << format_number(e.time) << " s"
           << (e.kind == EventKind::pi_pulse ? std::string(" axis ") + axis_name(e.axis) : "") << '\n';
    for (const auto& w : sched.warnings) os << "warning: " << w << '\n';
    os << "\n[integrator]\n"
       << "method: " << method_name(cfg.integrator.method) << '\n'
       << "order: " << cfg.integrator.order << '\n'
       << "steps: " << s.steps << '\n'
       << "random_numbers: none\n";
    return os.str();
}

std::string budget_csv(const RunConfig& cfg)
{
    const PhysicalParams& p = cfg.plan.params;
    std::string out = "section,quantity,value,unit\n";
    auto row = [&](const char* sec, const char* q, double v, const char* unit) {
        out += std::string(sec) + ',' + q + ',' + format_number(v) + ',' + unit + '\n';
    };
    const double tau = cfg.plan.gate_time();
    try {
        const StarkBudget sb = stark_budget(p);
        row("stark", "single_ion_shift", sb.single_ion_shift, "rad/s");
        row("stark", "single_ion_shift_hz", sb.single_ion_shift / kTwoPi, "Hz");
        row("stark", "single_ion_shift_alt_delta", sb.single_ion_shift_alt, "rad/s");
        row("stark", "phonon_coupled_shift", sb.phonon_coupled_shift, "rad/s");
        row("stark", "xy_coupling", sb.xy_coupling, "rad/s");
        row("stark", "zz_coupling", sb.zz_coupling, "rad/s");
        row("stark", "xy_infidelity", coupling_infidelity(sb.xy_coupling, tau), "1");
        row("stark", "zz_infidelity", coupling_infidelity(sb.zz_coupling, tau), "1");
    } catch (const std::exception&) {
        out += "stark,undefined,nan,omega_r or delta_omega0 is zero\n";
    }
    const NoiseBudget nb = noise_budget(p, tau, cfg.noise);
    row("noise", "s_bb_dressed", nb.s_bb_dressed, "Hz");
    row("noise", "s_rabi_second_order", nb.s_rabi_second_order, nb.rabi_terms_refocused ? "Hz (echo-refocused)" : "Hz");
    row("noise", "s_rabi_r", nb.s_rabi_r, nb.rabi_terms_refocused ? "Hz (echo-refocused)" : "Hz");
    row("noise", "total_infidelity", nb.total_infidelity, "1");
    row("external", "motional_error_bound", 1e-3, "1 (cited, not recomputed)");
    return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& body)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + path.string() + "'");
    f << body;
}

RunConfig load_with_overrides(const CliOptions& opt)
{
    RunConfig c = load_config(opt.config_path);
    if (opt.out_dir) c.out_dir = *opt.out_dir;
    if (opt.jobs) {
        if (*opt.jobs < 1) throw ConfigError("--jobs must be >= 1");
        c.parallel_jobs = *opt.jobs;
    }
    return c;
}

std::filesystem::path prepare_dir(const std::string& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + dir + "'");
    return dir;
}

} // namespace

int report_exception(std::ostream& err)
{
    try {
        throw;
    } catch (const NormDriftError& e) {
        err << "invariant violation: " << e.what() << '\n';
        return kInvariantViolation;
    } catch (const IntegrationError& e) {
        err << "integration failure: " << e.what() << '\n';
        return kIntegrationFailure;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const ArgumentError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const TruncationError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const SingularityError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kIntegrationFailure;
    }
}

int cmd_run(const CliOptions& opt, std::ostream& out, std::ostream& err)
{
    try {
        const RunConfig c = load_with_overrides(opt);
        const PulseSchedule sched = c.plan.schedule();
        IntegratorConfig ic = c.integrator;
        ic.keep_states = false;
        const ScenarioResult r = run_scenario(c.plan, sched, ic);
        const auto dir = prepare_dir(c.out_dir);
        write_file(dir / "trajectory.csv", trajectory_csv(r.trajectory));
        write_file(dir / "summary.txt", summary_text(c, r.summary, sched));
        write_file(dir / "budget.csv", budget_csv(c));
        out << r.summary.name << ": F = " << format_number(r.summary.final_fidelity)
            << ", IF = " << format_number(r.summary.infidelity) << " -> " << dir.string() << '\n';
        return kOk;
    } catch (...) {
        return report_exception(err);
    }
}

int cmd_sweep(const CliOptions& opt, std::ostream& out, std::ostream& err)
{
    RunConfig base;
    try {
        base = load_with_overrides(opt);
        if (!base.sweep) throw ConfigError("sweep block missing (sweep.parameter, sweep.values)");
    } catch (...) {
        return report_exception(err);
    }
    const SweepSpec sw = *base.sweep;

    struct Row {
        bool done = false;
        ScenarioSummary summary;
        double runtime = 0.0;
    };
    std::vector<Row> rows(sw.values.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};
    std::mutex err_mu;
    int failure = kOk;
    std::string failure_msg;

    auto worker = [&] {
        while (!abort) {
            const std::size_t i = next++;
            if (i >= sw.values.size()) return;
            try {
                KeyValues kv;
                for (const auto& e : base.raw)
                    if (e.first != sw.parameter && e.first.rfind("sweep.", 0) != 0) kv.push_back(e);
                kv.emplace_back(sw.parameter, sw.values[i]);
                const RunConfig c = build_config(kv);
                IntegratorConfig ic = c.integrator;
                ic.keep_states = false;
                const auto t0 = std::chrono::steady_clock::now();
                const ScenarioResult r = run_scenario(c.plan, c.plan.schedule(), ic);
                rows[i].runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                rows[i].summary = r.summary;
                rows[i].done = true;
            } catch (...) {
                std::ostringstream es;
                const int code = report_exception(es);
                std::lock_guard lock(err_mu);
                if (failure == kOk) {
                    failure = code;
                    failure_msg = "sweep value '" + sw.values[i] + "': " + es.str();
                }
                abort = true;
            }
        }
    };
    const int jobs = std::max(1, std::min<int>(base.parallel_jobs, static_cast<int>(sw.values.size())));
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    // Row order by numeric value when every value is numeric, else as listed.
    std::vector<std::size_t> order(sw.values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    bool numeric = true;
    std::vector<double> num(sw.values.size(), 0.0);
    for (std::size_t i = 0; i < sw.values.size(); ++i) {
        const auto& v = sw.values[i];
        auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), num[i]);
        if (ec != std::errc() || p != v.data() + v.size()) numeric = false;
    }
    if (numeric)
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return num[a] < num[b]; });

    std::string csv = "value,final_fidelity,infidelity,gate_time_s,peak_phonons\n";
    std::string timing = "value,runtime_s\n";
    for (std::size_t i : order) {
        if (!rows[i].done) continue;
        const auto& s = rows[i].summary;
        csv += sw.values[i] + ',' + format_number(s.final_fidelity) + ',' + format_number(s.infidelity) + ',' +
               format_number(s.gate_time) + ',' + format_number(s.peak_mean_phonons) + '\n';
        timing += sw.values[i] + ',' + format_number(rows[i].runtime) + '\n';
    }
    try {
        const auto dir = prepare_dir(base.out_dir);
        write_file(dir / "sweep.csv", csv);
        write_file(dir / "sweep_timing.csv", timing);
        out << "sweep over " << sw.parameter << ": " << sw.values.size() << " values -> " << dir.string() << '\n';
    } catch (...) {
        return report_exception(err);
    }
    if (failure != kOk) {
        err << failure_msg;
        return failure;
    }
    return kOk;
}

int cmd_validate(const CliOptions& opt, std::ostream& out, std::ostream& err)
{
    RunConfig c;
    try {
        c = load_with_overrides(opt);
    } catch (...) {
        return report_exception(err);
    }
    const PhysicalParams& p = c.plan.params;
    out << "hierarchy: eps/4 << Omega_r/4 << nu ~ Omega << 4 omega0  (slack " << format_number(c.validate_slack)
        << ")\n";
    for (const auto& l : hierarchy_chain(p, c.validate_slack)) {
        std::string flag = l.pass ? "pass" : "warn";
        if (l.matched) flag = l.pass ? "matched by construction" : "warn";
        out << "  " << std::left << std::setw(20) << l.name << " ratio " << std::setw(14)
            << format_number(l.ratio) << ' ' << flag << '\n';
    }
    // Lamb-Dicke check nu eta sqrt(N)/4 << Omega_r - eps at the cutoff.
    const double ld = p.nu * p.eta * std::sqrt(double(c.plan.phonon_cutoff)) / 4.0;
    const double room = std::abs(std::abs(p.omega_r) - std::abs(p.epsilon()));
    const double r = ld > 0 ? room / ld : INFINITY;
    out << "  " << std::left << std::setw(20) << "Lamb-Dicke at cutoff" << " ratio " << std::setw(14)
        << format_number(r) << ' ' << (r >= c.validate_slack ? "pass" : "warn") << '\n';
    return kOk;
}

} // namespace dgate
