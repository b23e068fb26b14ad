// tatrec — config-driven experiment runner for the thermoacoustic
// reconstruction toolkit, plus file-level subcommands around each module.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tat/eikonal.hpp"
#include "tat/elliptic.hpp"
#include "tat/io.hpp"
#include "tat/mask.hpp"
#include "tat/neumann.hpp"
#include "tat/phantoms.hpp"
#include "tat/rays.hpp"
#include "tat/speed.hpp"
#include "tat/time_reversal.hpp"
#include "tat/wave.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tat;

namespace {

SpeedKind speed_kind_from(const std::string& s) {
    if (s == "c1") return SpeedKind::c1;
    if (s == "c2") return SpeedKind::c2;
    if (s == "c3") return SpeedKind::c3;
    if (s == "c4") return SpeedKind::c4;
    if (s == "c5") return SpeedKind::c5;
    if (s == "constant") return SpeedKind::constant;
    throw std::invalid_argument("unknown speed kind: " + s);
}

SpeedModel speed_from_json(const json& j) {
    SpeedModel m = SpeedModel::make(speed_kind_from(j.value("kind", "c1")),
                                    j.value("params", std::vector<double>{}));
    if (j.contains("cutoff_width")) m.cutoff_width = j.at("cutoff_width");
    return m;
}

ScalarField phantom_from_json(const json& j, const Grid2D& g) {
    const std::string kind = j.value("kind", "shepp_logan");
    if (kind == "shepp_logan") {
        std::vector<Disk> disks = default_disks();
        if (j.contains("disks")) {
            disks.clear();
            for (const auto& d : j.at("disks"))
                disks.push_back({d.at(0), d.at(1), d.at(2), d.size() > 3 ? double(d.at(3)) : 1.0});
        }
        return shepp_logan(g, disks, j.value("scale", 1.1));
    }
    if (kind == "stripes") return stripes_phantom(g, j.value("period", 0.25));
    if (kind == "bump")
        return smooth_bump(g, j.value("cx", 0.0), j.value("cy", 0.0), j.value("radius", 0.4),
                           j.value("amplitude", 1.0));
    if (kind == "image") {
        Region fit = Region::omega(g, j.value("fit_half_width", 1.1));
        return load_image_phantom(j.at("path"), g, fit);
    }
    throw std::invalid_argument("unknown phantom kind: " + kind);
}

std::string resolve_out_dir(const json& cfg, const std::string& cli_out) {
    std::string dir = cli_out;
    if (dir.empty() && cfg.contains("output")) dir = cfg.at("output").value("dir", "");
    if (dir.empty()) dir = "tatrec_out";
    if (!fs::path(dir).is_absolute()) {
        const char* root = std::getenv("TATREC_OUT");
        if (root && *root) dir = std::string(root) + "/" + dir;
    }
    return dir;
}

int run_config(const std::string& config_path, const std::string& cli_out, bool force_both,
               bool print_table) {
    std::ifstream in(config_path);
    if (!in.good()) {
        std::cerr << "tatrec: cannot open config " << config_path << "\n";
        return 1;
    }
    json cfg;
    try {
        in >> cfg;
    } catch (const std::exception& e) {
        std::cerr << "tatrec: config parse error: " << e.what() << "\n";
        return 1;
    }

    try {
        const json jgrid = cfg.value("grid", json::object());
        const int nx = jgrid.value("nx", 201);
        const double bounds = jgrid.value("bounds", 1.5);
        Grid2D g = Grid2D::square(nx, bounds);
        Region omega = Region::omega(g);

        SpeedModel model = speed_from_json(cfg.value("speed", json::object()));
        ScalarField c = eval_speed(model, g);
        PMLProfile pml = PMLProfile::build(g);

        ScalarField f = phantom_from_json(cfg.value("phantom", json::object()), g);

        // time: explicit T or a multiple of the eikonal critical time
        const json jtime = cfg.value("time", json::object());
        EikonalResult eik = fast_sweep(c, omega);
        const double T0 = critical_time(eik.traveltime, omega);
        double T = 0.0;
        if (jtime.contains("T"))
            T = jtime.at("T");
        else
            T = jtime.value("T_mult", 4.0) * T0;
        if (!(T > 0.0)) throw std::invalid_argument("time.T / time.T_mult must be positive");

        BoundaryTrace trace = forward_measure(f, c, T, pml, omega);

        if (cfg.contains("mask")) {
            BoundaryMask chi = BoundaryMask::of_sides(cfg.at("mask").value("sides", "NSEW"),
                                                      cfg.at("mask").value("ramp", 0.2));
            trace = apply_mask(trace, chi.sample(omega));
        }
        std::uint64_t seed = 0;
        double noise_level = 0.0;
        if (cfg.contains("noise")) {
            noise_level = cfg.at("noise").value("level", 0.0);
            seed = cfg.at("noise").value("seed", 0);
            trace = add_noise(trace, noise_level, seed);
        }

        const json jm = cfg.value("method", json::object());
        std::string method = jm.value("name", "ns");
        if (force_both) method = "both";
        NeumannOptions opts;
        opts.max_terms = jm.value("max_terms", 9);
        opts.tol = jm.value("tol", 0.05);
        opts.ground_truth = &f;
        if (cfg.contains("region_K"))
            opts.region_K = Region::omega(g, cfg.at("region_K").value("half_width", 1.1));

        const std::string dir = resolve_out_dir(cfg, cli_out);
        fs::create_directories(dir);
        std::vector<std::string> files;
        json report;
        auto save_field = [&](const std::string& name, const ScalarField& fld) {
            write_field(dir + "/" + name, fld);
            write_pgm(dir + "/" + name + ".pgm", fld);
            files.push_back(name + ".f64");
            files.push_back(name + ".json");
            files.push_back(name + ".pgm");
        };
        save_field("phantom", f);
        save_field("speed", c);
        save_field("traveltime", eik.traveltime);
        write_trace(dir + "/trace.bin", trace);
        files.push_back("trace.bin");

        report["config"] = cfg;
        report["T"] = T;
        report["T0"] = T0;
        report["n_steps"] = trace.n_steps;
        report["dt"] = trace.dt;
        report["noise_level"] = noise_level;
        report["seed"] = seed;

        const ScalarField* tr_field = nullptr;
        ScalarField tr_store;
        if (method == "tr" || method == "both") {
            tr_store = reconstruct_tr(trace, c, T, pml, opts);
            tr_field = &tr_store;
            save_field("recon_tr", tr_store);
            report["tr"] = {{"rel_error", l2_rel_error(tr_store, f, omega)}};
        }
        const ScalarField* ns_field = nullptr;
        ReconstructionReport rep;
        if (method == "ns" || method == "both") {
            rep = reconstruct_ns(trace, c, T, pml, opts);
            ns_field = &rep.final_field();
            save_field("recon_ns", rep.final_field());
            for (std::size_t m = 0; m < rep.iterates.size(); ++m) {
                const std::string name = "ns_iter_" + std::to_string(m);
                write_field(dir + "/" + name, rep.iterates[m]);
                files.push_back(name + ".f64");
                files.push_back(name + ".json");
            }
            report["ns"] = json::parse(rep.to_json());
            report["ns"]["rel_error"] = rep.rel_errors.back();
        }

        {
            std::vector<std::string> names{"phantom"};
            std::vector<const ScalarField*> fields{&f};
            if (tr_field) {
                names.push_back("tr");
                fields.push_back(tr_field);
            }
            if (ns_field) {
                names.push_back("ns");
                fields.push_back(ns_field);
            }
            write_x_slice_csv(dir + "/x_slices.csv", names, fields);
            write_y_slice_csv(dir + "/y_slices.csv", names, fields);
            files.push_back("x_slices.csv");
            files.push_back("y_slices.csv");
        }

        {
            std::ofstream rep_out(dir + "/report.json");
            rep_out << report.dump(2) << "\n";
            files.push_back("report.json");
        }
        write_manifest(dir, files);

        if (print_table) {
            std::cout << "method  rel_l2_error  k\n";
            if (tr_field)
                std::cout << "tr      " << report["tr"]["rel_error"].get<double>() << "      0\n";
            if (ns_field)
                std::cout << "ns      " << report["ns"]["rel_error"].get<double>() << "      "
                          << rep.k_used << " (" << to_string(rep.stop_reason) << ")\n";
        } else {
            std::cout << dir << "/report.json\n";
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "tatrec: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thermoacoustic / photoacoustic Neumann-series reconstruction toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir;

    auto* run = app.add_subcommand("run", "run a full experiment from a JSON config");
    run->add_option("--config", config_path, "config file")->required();
    run->add_option("--out", out_dir, "output directory (overrides config)");

    auto* cmp = app.add_subcommand("compare", "run TR and NS and print the error table");
    cmp->add_option("--config", config_path, "config file")->required();
    cmp->add_option("--out", out_dir, "output directory (overrides config)");

    std::string speed_s = "c1", phantom_s = "shepp_logan", gamma_s = "all";
    int nx = 201;
    double T_arg = 0.0, t_mult = 4.0, t_max = 10.0;
    auto* fwd = app.add_subcommand("forward", "simulate the measurement trace");
    fwd->add_option("--speed", speed_s);
    fwd->add_option("--phantom", phantom_s);
    fwd->add_option("--nx", nx);
    fwd->add_option("--T", T_arg);
    fwd->add_option("--t-mult", t_mult);
    fwd->add_option("--out", out_dir);

    std::string trace_path, method_s = "ns";
    int max_terms = 9;
    double tol = 0.0;
    auto* rec = app.add_subcommand("reconstruct", "reconstruct from a trace file");
    rec->add_option("--trace", trace_path)->required();
    rec->add_option("--speed", speed_s);
    rec->add_option("--nx", nx);
    rec->add_option("--method", method_s);
    rec->add_option("--max-terms", max_terms);
    rec->add_option("--tol", tol);
    rec->add_option("--out", out_dir);

    auto* eik = app.add_subcommand("eikonal", "critical time and distance map");
    eik->add_option("--speed", speed_s);
    eik->add_option("--gamma", gamma_s, "all or a subset of NSEW");
    eik->add_option("--nx", nx);
    eik->add_option("--out", out_dir);

    std::string from_s = "0,0", dir_s = "1,0";
    auto* ray = app.add_subcommand("raytrace", "trace a geodesic or broken ray");
    ray->add_option("--speed", speed_s);
    ray->add_option("--from", from_s);
    ray->add_option("--dir", dir_s);
    ray->add_option("--t-max", t_max);
    ray->add_option("--out", out_dir);

    std::string kind_s = "shepp_logan";
    auto* ph = app.add_subcommand("phantom", "write a phantom field and PGM");
    ph->add_option("--kind", kind_s);
    ph->add_option("--nx", nx);
    ph->add_option("--out", out_dir);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(run)) return run_config(config_path, out_dir, false, false);
        if (app.got_subcommand(cmp)) return run_config(config_path, out_dir, true, true);

        if (app.got_subcommand(fwd)) {
            Grid2D g = Grid2D::square(nx);
            Region omega = Region::omega(g);
            SpeedModel m = SpeedModel::make(speed_kind_from(speed_s));
            ScalarField c = eval_speed(m, g);
            json pj;
            pj["kind"] = phantom_s;
            ScalarField f = phantom_from_json(pj, g);
            double T = T_arg;
            if (!(T > 0.0)) {
                EikonalResult e = fast_sweep(c, omega);
                T = t_mult * critical_time(e.traveltime, omega);
            }
            const std::string dir = out_dir.empty() ? "." : out_dir;
            fs::create_directories(dir);
            BoundaryTrace tr = forward_measure(f, c, T, PMLProfile::build(g), omega);
            write_trace(dir + "/trace.bin", tr);
            write_field(dir + "/phantom", f);
            write_pgm(dir + "/phantom.pgm", f);
            std::cout << dir << "/trace.bin T=" << T << " n_steps=" << tr.n_steps << "\n";
            return 0;
        }

        if (app.got_subcommand(rec)) {
            Grid2D g = Grid2D::square(nx);
            SpeedModel m = SpeedModel::make(speed_kind_from(speed_s));
            ScalarField c = eval_speed(m, g);
            BoundaryTrace tr = read_trace(trace_path, g);
            const double T = tr.duration();
            PMLProfile pml = PMLProfile::build(g);
            NeumannOptions opts;
            opts.max_terms = max_terms;
            opts.tol = tol;
            const std::string dir = out_dir.empty() ? "." : out_dir;
            fs::create_directories(dir);
            if (method_s == "tr") {
                ScalarField r = reconstruct_tr(tr, c, T, pml, opts);
                write_field(dir + "/recon_tr", r);
                write_pgm(dir + "/recon_tr.pgm", r);
            } else {
                ReconstructionReport rep = reconstruct_ns(tr, c, T, pml, opts);
                write_field(dir + "/recon_ns", rep.final_field());
                write_pgm(dir + "/recon_ns.pgm", rep.final_field());
                std::ofstream out(dir + "/report.json");
                out << rep.to_json() << "\n";
                std::cout << "k_used=" << rep.k_used << " stop=" << to_string(rep.stop_reason)
                          << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(eik)) {
            Grid2D g = Grid2D::square(nx);
            Region omega = Region::omega(g);
            ScalarField c = eval_speed(SpeedModel::make(speed_kind_from(speed_s)), g);
            GammaSides sides =
                gamma_s == "all" ? GammaSides::all() : GammaSides::from_string(gamma_s);
            EikonalResult r = fast_sweep(c, omega, sides);
            std::cout << "T0 = " << critical_time(r.traveltime, omega) << " (sweeps " << r.sweeps
                      << ")\n";
            if (!out_dir.empty()) {
                fs::create_directories(out_dir);
                // clamp the +inf exterior for viewing
                ScalarField map = r.traveltime;
                const double tmax = critical_time(r.traveltime, omega);
                for (auto& v : map.data) v = std::min(v, tmax);
                write_field(out_dir + "/traveltime", map);
                write_pgm(out_dir + "/traveltime.pgm", map);
            }
            return 0;
        }

        if (app.got_subcommand(ray)) {
            SpeedModel m = SpeedModel::make(speed_kind_from(speed_s));
            auto parse2 = [](const std::string& s) {
                const auto k = s.find(',');
                if (k == std::string::npos) throw std::invalid_argument("expected x,y");
                return std::array<double, 2>{std::stod(s.substr(0, k)), std::stod(s.substr(k + 1))};
            };
            const auto x0 = parse2(from_s);
            const auto d = parse2(dir_s);
            const double th = std::atan2(d[1], d[0]);
            if (m.smooth()) {
                GeodesicResult r = trace_geodesic(x0, th, m, t_max, 0.0025, !out_dir.empty());
                std::cout << (r.exited ? "exit" : "trapped") << " t=" << r.exit_time << " at ("
                          << r.exit_point[0] << ", " << r.exit_point[1] << ")\n";
                if (!out_dir.empty()) {
                    fs::create_directories(out_dir);
                    std::ofstream csv(out_dir + "/ray.csv");
                    csv << "t,x,y\n";
                    for (const auto& s : r.path)
                        csv << s.t << "," << s.x[0] << "," << s.x[1] << "\n";
                }
            } else {
                BrokenRayResult r = trace_broken_ray(x0, th, m, t_max);
                for (const auto& e : r.events) {
                    std::cout << to_string(e.kind) << " t=" << e.time << " at (" << e.location[0]
                              << ", " << e.location[1] << ")";
                    if (e.kind == RayEventKind::transmit ||
                        e.kind == RayEventKind::total_internal_reflection)
                        std::cout << " sin_in=" << e.sin_in << " c_in=" << e.c_in
                                  << " c_out=" << e.c_out;
                    std::cout << "\n";
                }
                if (!out_dir.empty()) {
                    fs::create_directories(out_dir);
                    std::ofstream csv(out_dir + "/ray_events.csv");
                    csv << "t,x,y,kind\n";
                    for (const auto& e : r.events)
                        csv << e.time << "," << e.location[0] << "," << e.location[1] << ","
                            << to_string(e.kind) << "\n";
                }
            }
            return 0;
        }

        if (app.got_subcommand(ph)) {
            Grid2D g = Grid2D::square(nx);
            json pj;
            pj["kind"] = kind_s;
            ScalarField f = phantom_from_json(pj, g);
            const std::string dir = out_dir.empty() ? "." : out_dir;
            fs::create_directories(dir);
            write_field(dir + "/phantom", f);
            write_pgm(dir + "/phantom.pgm", f);
            std::cout << dir << "/phantom.f64\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "tatrec: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
