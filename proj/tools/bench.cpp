// Benchmark: the spectrum survey kernel, OpenMP against the serial reference.

#include <chrono>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "kurepa/parallel.hpp"
#include "kurepa/spectrum.hpp"

using namespace kurepa;
using clock_type = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& fn) {
    auto t0 = clock_type::now();
    fn();
    auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"survey kernel benchmark"};
    std::size_t max_size = 8, c = 2, budget = 12, reps = 3;
    std::string mode = "surrogate";
    app.add_option("--max-size", max_size);
    app.add_option("--c", c);
    app.add_option("--budget", budget);
    app.add_option("--mode", mode);
    app.add_option("--reps", reps);
    CLI11_PARSE(app, argc, argv);

    apply_thread_cap();
    Mode m = mode == "literal" ? Mode::Literal : Mode::Surrogate;
    auto models = enumerate_models(max_size, c, m);
    std::cout << "models: " << models.size() << " (max_size=" << max_size << ", c=" << c
              << ", mode=" << mode << ")\n";
    std::cout << "threads: " << effective_threads() << "\n";

    std::vector<ModelSurvey> serial_out, parallel_out;
    double best_serial = 1e300, best_parallel = 1e300;
    for (std::size_t r = 0; r < reps; ++r) {
        best_serial = std::min(
            best_serial, time_ms([&] { serial_out = survey_models_serial(models, c, budget, m); }));
        best_parallel = std::min(best_parallel, time_ms([&] {
                                     parallel_out =
                                         survey_models_parallel(models, c, budget, m);
                                 }));
    }
    bool agree = serial_out.size() == parallel_out.size();
    for (std::size_t i = 0; agree && i < serial_out.size(); ++i)
        agree = serial_out[i].size == parallel_out[i].size &&
                serial_out[i].maximal == parallel_out[i].maximal &&
                serial_out[i].laws_ok == parallel_out[i].laws_ok;

    std::cout << "serial:   " << best_serial << " ms\n";
    std::cout << "parallel: " << best_parallel << " ms\n";
    std::cout << "speedup:  " << (best_parallel > 0 ? best_serial / best_parallel : 0) << "x\n";
    std::cout << "outputs identical: " << (agree ? "yes" : "NO") << "\n";
    return agree ? 0 : 1;
}
