// Scriptable stand-in for a solver: burns time, allocates memory, and prints
// a canned answer, so the orchestrator can be exercised without real systems.
#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstring>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"mock solver for harness tests"};
    double sleep_s = 0.0;
    long long alloc_mb = 0;
    std::vector<std::string> lines;
    std::string answer_file;
    int exit_code = 0;
    app.add_option("--sleep", sleep_s, "seconds to sleep before exiting");
    app.add_option("--alloc-mb", alloc_mb, "MiB to allocate and touch");
    app.add_option("--print", lines, "line to print (repeatable, in order)");
    app.add_option("--answer-file", answer_file, "file whose contents are printed");
    app.add_option("--exit", exit_code, "exit code");
    CLI11_PARSE(app, argc, argv);

    // Grown chunk by chunk like a search's working set; when the address-space
    // rlimit refuses a chunk, keep what was granted and carry on so the
    // monitor sees a live process sitting above its budget.
    std::vector<std::vector<char>> ballast;
    for (long long grabbed = 0; grabbed < alloc_mb; grabbed += 16) {
        size_t chunk = static_cast<size_t>(std::min(alloc_mb - grabbed, 16LL)) << 20;
        try {
            ballast.emplace_back(chunk);
            std::memset(ballast.back().data(), 0x5a, chunk);
        } catch (const std::bad_alloc&) {
            break;
        }
    }
    for (const auto& line : lines) std::cout << line << '\n';
    if (!answer_file.empty()) {
        std::ifstream in(answer_file);
        std::cout << in.rdbuf();
    }
    std::cout.flush();
    if (sleep_s > 0)
        std::this_thread::sleep_for(std::chrono::duration<double>(sleep_s));
    return exit_code;
}
