#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "eaqturbo/decoder.hpp"
#include "eaqturbo/simulate.hpp"
#include "eaqturbo/spectrum.hpp"
#include "json.hpp"

using namespace eaqturbo;

namespace {

constexpr const char* kVersion = "1.0.0";

std::string flag(bool v) { return v ? "yes" : "no"; }

nlohmann::json signature_json(const ResourceSignature& sig) {
    return {{"memory", sig.memory},   {"logical", sig.logical}, {"ancilla", sig.ancilla},
            {"ebit", sig.ebit},       {"cbit", sig.cbit},       {"gauge", sig.gauge},
            {"frame_qubits", sig.frame_qubits()}, {"total_qubits", sig.total_qubits()}};
}

int cmd_analyze(const std::string& path, int spectrum_w, bool as_json) {
    ConvolutionalEncoder enc = read_encoder_file(path);
    StateDiagram diagram(enc);
    PropertyReport props = analyze_properties(diagram);
    DistanceSpectrum spec = distance_spectrum(diagram, spectrum_w);
    std::optional<int> fd = spec.free_distance();

    if (as_json) {
        nlohmann::json j;
        j["encoder"] = path;
        j["signature"] = signature_json(enc.sig());
        j["non_catastrophic"] = props.non_catastrophic;
        j["quasi_recursive"] = props.quasi_recursive;
        j["recursive"] = props.recursive;
        j["zero_cycle_vertices"] = props.zero_cycle_vertices;
        if (!props.witness.empty()) j["witness"] = props.witness;
        if (fd)
            j["free_distance"] = *fd;
        else
            j["free_distance"] = nullptr;
        nlohmann::json counts = nlohmann::json::array();
        for (int w = 0; w <= spec.truncation; ++w) counts.push_back(spec.counts[w].str());
        j["spectrum"] = counts;
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    const auto& sig = enc.sig();
    std::cout << "encoder: " << path << "\n";
    std::cout << "signature: m=" << sig.memory << " k_q=" << sig.logical << " a=" << sig.ancilla
              << " c=" << sig.ebit << " k_c=" << sig.cbit << " g=" << sig.gauge
              << " (n=" << sig.frame_qubits() << ", N=" << sig.total_qubits() << ")\n";
    std::cout << "non-catastrophic: " << flag(props.non_catastrophic) << "\n";
    std::cout << "quasi-recursive: " << flag(props.quasi_recursive) << "\n";
    std::cout << "recursive: " << flag(props.recursive) << "\n";
    if (!props.witness.empty()) std::cout << "witness: " << props.witness << "\n";
    if (fd)
        std::cout << "free distance: " << *fd << "\n";
    else
        std::cout << "free distance: above " << spec.truncation << "\n";
    std::cout << "spectrum (w,count):\n";
    for (int w = 0; w <= spec.truncation; ++w)
        std::cout << w << "," << spec.counts[w].str() << "\n";
    return 0;
}

int cmd_search(const ResourceSignature& sig, uint64_t samples, uint64_t count, uint64_t seed,
               bool want_recursive, bool want_quasi, bool want_non_catastrophic,
               int spectrum_w, const std::string& out_dir) {
    sig.validate();
    Rng rng(seed);
    uint64_t found = 0;
    if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
    for (uint64_t i = 0; i < samples && found < count; ++i) {
        ConvolutionalEncoder enc(sig, sample_symplectic(sig.total_qubits(), rng));
        StateDiagram diagram(enc);
        CatastrophicityReport cat = check_non_catastrophic(diagram);
        if (want_non_catastrophic && !cat.non_catastrophic) continue;
        RecursionReport rec = check_recursive(diagram);
        if (want_recursive && !rec.recursive) continue;
        if (want_quasi && !rec.quasi_recursive) continue;
        std::optional<int> fd = free_distance(diagram, spectrum_w);
        std::cout << "candidate " << found << ": sample=" << i
                  << " recursive=" << flag(rec.recursive)
                  << " quasi-recursive=" << flag(rec.quasi_recursive)
                  << " non-catastrophic=" << flag(cat.non_catastrophic) << " free-distance=";
        if (fd)
            std::cout << *fd;
        else
            std::cout << ">" << spectrum_w;
        std::cout << "\n";
        if (!out_dir.empty()) {
            std::string file = out_dir + "/candidate_" + std::to_string(found) + ".enc";
            write_encoder_file(file, enc);
            std::cout << "  wrote " << file << "\n";
        }
        ++found;
    }
    std::cout << "found " << found << " candidate(s)\n";
    return 0;
}

int cmd_bounds(double rate, bool assisted) {
    double p = noise_limit(rate, assisted);
    std::cout.precision(6);
    std::cout << std::fixed << p << "\n";
    return 0;
}

int cmd_simulate(const std::string& outer_path, const std::string& inner_path,
                 SimulationConfig config, const std::string& out_path) {
    config.outer_name = outer_path;
    config.inner_name = inner_path;
    ConvolutionalEncoder outer = read_encoder_file(outer_path);
    ConvolutionalEncoder inner = read_encoder_file(inner_path);
    SimulationRunner runner(std::move(outer), std::move(inner), config);
    std::vector<CellResult> cells;
    for (size_t c = 0; c < config.p_values.size(); ++c) {
        CellResult cell = runner.run_cell(c);
        std::cerr << "p=" << cell.p << " trials=" << cell.trials << " failures=" << cell.failures
                  << " wer=" << cell.wer << " (" << cell.seconds << " s)\n";
        cells.push_back(cell);
    }
    if (out_path == "-") {
        write_simulation_csv(std::cout, config, cells);
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open output file: " + out_path);
        write_simulation_csv(out, config, cells);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entanglement-assisted quantum convolutional and turbo codes"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    auto* analyze = app.add_subcommand("analyze", "state-diagram properties and spectrum");
    std::string analyze_file;
    int analyze_w = 10;
    bool analyze_json = false;
    analyze->add_option("--encoder", analyze_file, "encoder file")->required();
    analyze->add_option("--spectrum", analyze_w, "spectrum truncation degree")
        ->check(CLI::Range(1, 40));
    analyze->add_flag("--json", analyze_json, "machine-readable output");

    auto* search = app.add_subcommand("search", "random encoder search with property filters");
    ResourceSignature search_sig;
    uint64_t search_samples = 10000, search_count = 10, search_seed = 1;
    bool req_rec = false, req_quasi = false, req_noncat = false;
    int search_w = 10;
    std::string search_out;
    search->add_option("--memory", search_sig.memory)->required();
    search->add_option("--logical", search_sig.logical)->required();
    search->add_option("--ancilla", search_sig.ancilla);
    search->add_option("--ebit", search_sig.ebit);
    search->add_option("--cbit", search_sig.cbit);
    search->add_option("--gauge", search_sig.gauge);
    search->add_option("--samples", search_samples, "seed transformations to draw");
    search->add_option("--count", search_count, "stop after this many hits");
    search->add_option("--seed", search_seed);
    search->add_option("--spectrum", search_w, "truncation for the free-distance report");
    search->add_flag("--require-recursive", req_rec);
    search->add_flag("--require-quasi-recursive", req_quasi);
    search->add_flag("--require-non-catastrophic", req_noncat);
    search->add_option("--out-dir", search_out, "write hits as encoder files");

    auto* bounds = app.add_subcommand("bounds", "hashing-bound noise limit for a rate");
    double bounds_rate = 0.0;
    bool bounds_assisted = false;
    bounds->add_option("--rate", bounds_rate, "code rate in (0,1)")->required();
    bounds->add_flag("--assisted", bounds_assisted, "entanglement-assisted bound");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo word-error-rate campaign");
    std::string sim_outer, sim_inner, sim_out = "-";
    SimulationConfig config;
    std::vector<double> sim_p;
    simulate->add_option("--outer", sim_outer, "outer encoder file")->required();
    simulate->add_option("--inner", sim_inner, "inner encoder file")->required();
    simulate->add_option("--frames", config.frames_outer, "outer frames per codeword")
        ->required();
    simulate->add_option("--p", sim_p, "depolarizing parameters")->required()->delimiter(',');
    simulate->add_option("--p-ebit", config.p_ebit, "Bob-side ebit noise rate");
    simulate->add_option("--seed", config.master_seed, "master seed");
    simulate->add_option("--min-failures", config.min_failures);
    simulate->add_option("--max-trials", config.max_trials);
    simulate->add_option("--workers", config.workers, "0 = hardware concurrency");
    simulate->add_option("--max-iterations", config.max_iterations);
    simulate->add_flag("--decoder-models-ebit-noise", config.decoder_models_ebit_noise,
                       "fold the ebit noise rate into the Bell-syndrome likelihood");
    simulate->add_option("--out", sim_out, "output CSV path ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return 1;
    }

    try {
        if (*analyze) return cmd_analyze(analyze_file, analyze_w, analyze_json);
        if (*search)
            return cmd_search(search_sig, search_samples, search_count, search_seed, req_rec,
                              req_quasi, req_noncat, search_w, search_out);
        if (*bounds) return cmd_bounds(bounds_rate, bounds_assisted);
        if (*simulate) {
            config.p_values = sim_p;
            return cmd_simulate(sim_outer, sim_inner, config, sim_out);
        }
    } catch (const invalid_encoder_error& e) {
        std::cerr << "invalid encoder: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
