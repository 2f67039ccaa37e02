#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "knotkit/catalog.hpp"
#include "knotkit/energy.hpp"
#include "knotkit/errors.hpp"
#include "knotkit/io.hpp"
#include "knotkit/mm_energy.hpp"
#include "knotkit/optimize.hpp"
#include "knotkit/parallel.hpp"
#include "knotkit/variation.hpp"

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

int run(int argc, char** argv) {
    CLI::App app{"knot energies, extremality residuals and normal-form search"};
    app.require_subcommand(1);

    int threads = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;
    app.add_option("--threads", threads, "worker cap (default: all cores)");
    app.add_option("--seed", seed, "random seed (default 0)")->each([&](const std::string&) {
        seed_given = true;
    });

    // energy
    auto* cmd_energy = app.add_subcommand("energy", "pairwise-kernel energy of a knot");
    std::string kernel_name = "arc3-chord2";
    int samples = 512;
    std::string in_path;
    cmd_energy->add_option("--kernel", kernel_name, "arc3-chord2 | charged | mobius")->required();
    cmd_energy->add_option("--samples", samples, "resample grid size")->required();
    cmd_energy->add_option("knotfile", in_path)->required();

    // mm
    auto* cmd_mm = app.add_subcommand("mm", "Mm-energy of a knot");
    int mm_samples = 512;
    std::string per_point_path;
    bool mm_discrete = false;
    std::string mm_in;
    cmd_mm->add_option("--samples", mm_samples, "base-point count")->required();
    cmd_mm->add_option("--per-point", per_point_path, "dump t,f_Mm rows to CSV");
    cmd_mm->add_flag("--discrete", mm_discrete, "resample and use the grid profile path");
    cmd_mm->add_option("knotfile", mm_in)->required();

    // residual
    auto* cmd_res = app.add_subcommand("residual", "V1/V2 extremality residuals");
    std::string res_kernel = "arc3-chord2";
    int res_samples = 512;
    std::string res_in;
    cmd_res->add_option("--kernel", res_kernel)->required();
    cmd_res->add_option("--samples", res_samples)->required();
    cmd_res->add_option("knotfile", res_in)->required();

    // minimize
    auto* cmd_min = app.add_subcommand("minimize", "anneal toward a normal form");
    std::string objective, config_path, out_path, trace_path, start_path;
    cmd_min->add_option("--objective", objective, "mm | kernel name");
    cmd_min->add_option("--config", config_path, "key=value config file");
    cmd_min->add_option("--out", out_path, "output knotfile")->required();
    cmd_min->add_option("--trace", trace_path, "trace CSV");
    cmd_min->add_option("start-knotfile", start_path)->required();

    // catalog
    auto* cmd_cat = app.add_subcommand("catalog", "built-in starting knots");
    auto* cat_list = cmd_cat->add_subcommand("list", "list preset names");
    auto* cat_build = cmd_cat->add_subcommand("build", "build a preset");
    std::string cat_name, cat_out;
    int cat_samples = 256;
    cat_build->add_option("--name", cat_name)->required();
    cat_build->add_option("--samples", cat_samples)->required();
    cat_build->add_option("--out", cat_out)->required();
    cmd_cat->require_subcommand(1);

    // convert
    auto* cmd_conv = app.add_subcommand("convert", "knotfile <-> Wavefront OBJ polyline");
    std::string obj_out, knot_out, conv_in;
    cmd_conv->add_option("--obj", obj_out, "write OBJ polyline here (input is a knotfile)");
    cmd_conv->add_option("--knot", knot_out, "write knotfile here (input is an OBJ polyline)");
    cmd_conv->add_option("input", conv_in)->required();

    CLI11_PARSE(app, argc, argv);
    knotkit::set_thread_count(threads);

    if (cmd_energy->parsed()) {
        const knotkit::PolyKnot knot = knotkit::normalized_to_2pi(knotkit::read_knotfile_path(in_path));
        const knotkit::ArcCurve curve = knotkit::resample_arclength(knot, samples);
        const knotkit::EnergyReport rep = knotkit::total_energy(curve, knotkit::kernel_by_name(kernel_name));
        std::cout << rep.kernel_name << "," << rep.n << "," << num(rep.value) << "\n";
        return 0;
    }

    if (cmd_mm->parsed()) {
        const knotkit::PolyKnot knot = knotkit::read_knotfile_path(mm_in);
        knotkit::MmReport rep;
        if (mm_discrete)
            rep = knotkit::e_mm(knotkit::resample_arclength(knot, std::max(mm_samples, 16)));
        else
            rep = knotkit::e_mm(knot, mm_samples);
        std::cout << "E_Mm," << num(rep.value) << "\n";
        if (!per_point_path.empty()) {
            std::ofstream out(per_point_path);
            if (!out) throw knotkit::validation_error("cannot write " + per_point_path);
            out << "t,f_Mm\n";
            for (auto [t, f] : rep.per_point) out << num(t) << "," << num(f) << "\n";
        }
        return 0;
    }

    if (cmd_res->parsed()) {
        const knotkit::PolyKnot knot = knotkit::normalized_to_2pi(knotkit::read_knotfile_path(res_in));
        const knotkit::ArcCurve curve = knotkit::resample_arclength(knot, res_samples);
        const knotkit::ResidualField field =
            knotkit::residual_field(curve, knotkit::kernel_by_name(res_kernel));
        std::cout << "t,V1,V2\n";
        for (int i = 0; i < field.n; ++i)
            std::cout << num(curve.param(i)) << "," << num(field.v1[i]) << "," << num(field.v2[i])
                      << "\n";
        std::cout << "defect," << num(field.defect) << "\n";
        return 0;
    }

    if (cmd_min->parsed()) {
        knotkit::AnnealConfig cfg;
        if (!config_path.empty()) cfg = knotkit::parse_anneal_config_path(config_path);
        if (!objective.empty()) cfg.objective = objective;
        if (seed_given) cfg.seed = seed;
        const knotkit::PolyKnot start = knotkit::read_knotfile_path(start_path);
        const knotkit::OptimResult result = knotkit::anneal(start, cfg);
        knotkit::write_knotfile_path(out_path, result.best_knot);
        if (!trace_path.empty()) {
            std::ofstream out(trace_path);
            if (!out) throw knotkit::validation_error("cannot write " + trace_path);
            out << "iteration,current,best\n";
            for (auto [it, cur, best] : result.trace)
                out << it << "," << num(cur) << "," << num(best) << "\n";
        }
        std::cout << "best_energy," << num(result.best_energy) << "\n";
        std::cout << "accepted," << result.accepted_moves << "\n";
        return 0;
    }

    if (cmd_cat->parsed()) {
        if (cat_list->parsed()) {
            for (const std::string& name : knotkit::catalog_names()) std::cout << name << "\n";
            return 0;
        }
        if (cat_build->parsed()) {
            knotkit::write_knotfile_path(cat_out, knotkit::build_preset(cat_name, cat_samples));
            return 0;
        }
    }

    if (cmd_conv->parsed()) {
        if (obj_out.empty() == knot_out.empty())
            throw knotkit::validation_error("convert needs exactly one of --obj / --knot");
        if (!obj_out.empty())
            knotkit::write_obj_path(obj_out, knotkit::read_knotfile_path(conv_in));
        else
            knotkit::write_knotfile_path(knot_out, knotkit::read_obj_path(conv_in));
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const knotkit::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const knotkit::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
