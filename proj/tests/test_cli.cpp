// Drives the dtcsim binary end to end: file products, error categories,
// config-file precedence and worker-count determinism. The binary path
// comes from DTCSIM_BIN (set by ctest).

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    std::printf("%s %s\n", ok ? "[ok]  " : "[FAIL]", what.c_str());
    if (!ok) ++failures;
}

std::string bin_path() {
    const char* env = std::getenv("DTCSIM_BIN");
    return env ? env : "";
}

struct RunResult {
    int exit_code = -1;
    std::string err;
};

RunResult run(const std::string& args, const std::filesystem::path& dir) {
    const auto errfile = dir / "stderr.txt";
    const std::string cmd = bin_path() + " " + args + " >" + (dir / "stdout.txt").string() +
                            " 2>" + errfile.string();
    const int raw = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = raw == -1 ? -1 : WEXITSTATUS(raw);
    std::ifstream in(errfile);
    std::stringstream ss;
    ss << in.rdbuf();
    result.err = ss.str();
    return result;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

}  // namespace

int main() {
    if (bin_path().empty()) {
        std::printf("[FAIL] DTCSIM_BIN not set\n");
        return 1;
    }
    const auto dir = std::filesystem::temp_directory_path() / "dtcsim_cli_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const std::string out = (dir / "run").string();

    // Perfect-flip trace: alternating +-1 and h = 1.
    {
        const auto r = run("trace --n 6 --eps 0 --p 0.3 --K 20 --seed 3 --out " + out, dir);
        check(r.exit_code == 0, "trace command exits 0");
        const auto rows = lines_of(slurp(out + ".trace.csv"));
        check(rows.size() == 21 && rows[0] == "k,m_k", "trace csv has header and 20 rows");
        bool alternating = true;
        for (std::size_t k = 1; k < rows.size(); ++k) {
            const std::string expect = std::to_string(k) + (k % 2 == 1 ? ",-1" : ",1");
            if (rows[k] != expect) alternating = false;
        }
        check(alternating, "perfect flip trace alternates exactly");
        check(slurp(out + ".summary.json").find("\"h\": 1.0") != std::string::npos,
              "summary reports h = 1");
    }

    // Spectrum product.
    {
        const auto r = run("spectrum --n 5 --eps 0.1 --p 0 --K 20 --seed 3 --out " + out, dir);
        check(r.exit_code == 0, "spectrum command exits 0");
        const auto rows = lines_of(slurp(out + ".spectrum.csv"));
        check(rows.size() == 12 && rows[0] == "freq_over_omega0,amplitude",
              "spectrum csv has K/2+1 bins");
        check(rows.back().rfind("0.5,", 0) == 0, "last bin sits at half the drive frequency");
    }

    // Byte-identical outputs for different worker counts.
    {
        const std::string base =
            " --n 4 --eps-min 0 --eps-max 0.4 --eps-points 5 --p 0.05 --K 10 --realizations 8"
            " --batches 2 --seed 9 --out ";
        run("critical --workers 1" + base + out + "w1", dir);
        run("critical --workers 2" + base + out + "w2", dir);
        check(slurp(out + "w1.variance.csv") == slurp(out + "w2.variance.csv"),
              "variance csv identical for 1 and 2 workers");
        const auto strip_out = [](std::string s, const std::string& tag) {
            std::string::size_type pos;
            while ((pos = s.find(tag)) != std::string::npos) s.erase(pos, tag.size());
            return s;
        };
        check(strip_out(slurp(out + "w1.summary.json"), out + "w1") ==
                  strip_out(slurp(out + "w2.summary.json"), out + "w2"),
              "summary json identical for 1 and 2 workers (paths aside)");
    }

    // Heatmap p = 0 row reproduces the critical command bit for bit.
    {
        const std::string grid = " --eps-min 0 --eps-max 0.4 --eps-points 5 --K 10"
                                 " --realizations 8 --batches 2 --seed 9 --out ";
        run("heatmap --n 4 --p-min 0 --p-max 0.06 --p-points 2" + grid + out + "hm", dir);
        run("critical --n 4 --p 0" + grid + out + "cr", dir);
        const auto hm = lines_of(slurp(out + "hm.heatmap.csv"));
        const auto cr = lines_of(slurp(out + "cr.variance.csv"));
        check(hm.size() == 11 && hm[0] == "p,eps,variance", "heatmap csv has the full grid");
        bool match = hm.size() == 11 && cr.size() == 6;
        for (std::size_t e = 1; match && e <= 5; ++e) {
            // hm row: "0,<eps>,<var>"; cr row: "<eps>,<var>,8"
            const auto& h = hm[e];
            const auto& c = cr[e];
            const auto var_h = h.substr(h.find(',', 2) + 1);
            const auto var_c = c.substr(c.find(',') + 1, c.rfind(',') - c.find(',') - 1);
            if (h.rfind("0,", 0) != 0 || var_h != var_c) match = false;
        }
        check(match, "heatmap p=0 row equals the critical variance column");
    }

    // Size scan product.
    {
        const auto r = run("size-scan --n 3 --n 4 --eps-min 0 --eps-max 0.4 --eps-points 5"
                           " --p 0 --K 10 --realizations 8 --batches 2 --seed 9 --out " +
                               out + "ss",
                           dir);
        check(r.exit_code == 0, "size-scan command exits 0");
        const auto rows = lines_of(slurp(out + "ss.sizescan.csv"));
        check(rows.size() == 3 && rows[0] == "n,peak_mean,peak_sigma" &&
                  rows[1].rfind("3,", 0) == 0 && rows[2].rfind("4,", 0) == 0,
              "size scan csv lists one row per chain length");
    }

    // Defaults land in the provenance echo, and re-running from the echoed
    // config reproduces the file.
    {
        run("trace --n 3 --eps 0.2 --seed 7 --out " + out + "d1", dir);
        const auto summary = slurp(out + "d1.summary.json");
        check(summary.find("\"K\": 50") != std::string::npos &&
                  summary.find("\"j_min\": 0.785398163397") != std::string::npos &&
                  summary.find("\"j_max\": 2.35619449019") != std::string::npos &&
                  summary.find("\"backend\": \"exact\"") != std::string::npos,
              "defaults (K, J interval, backend) echoed in the summary");
        run("trace --n 3 --eps 0.2 --K 50 --p 0 --j-min 0.785398163397"
            " --j-max 2.35619449019 --seed 7 --backend exact --out " +
                out + "d2",
            dir);
        check(slurp(out + "d1.trace.csv") == slurp(out + "d2.trace.csv"),
              "re-running from the echoed config reproduces the trace");
    }

    // Config file values apply, flags win, unknown keys are rejected.
    {
        const auto cfg = dir / "run.cfg";
        std::ofstream(cfg) << "# pilot settings\nn=5\np=0.2\nK=12\n";
        run("trace --eps 0 --config " + cfg.string() + " --seed 3 --out " + out + "cfg", dir);
        const auto summary = slurp(out + "cfg.summary.json");
        check(summary.find("\"n\": 5") != std::string::npos &&
                  summary.find("\"p\": 0.2") != std::string::npos &&
                  summary.find("\"K\": 12") != std::string::npos,
              "config file fills unset values");

        run("trace --eps 0 --p 0.4 --config " + cfg.string() + " --seed 3 --out " + out + "cfg2",
            dir);
        check(slurp(out + "cfg2.summary.json").find("\"p\": 0.4") != std::string::npos,
              "command-line flag overrides the config file");

        std::ofstream(cfg) << "qubits=5\n";
        const auto r = run("trace --config " + cfg.string() + " --out " + out + "cfg3", dir);
        check(r.exit_code == 2 && r.err.find("qubits") != std::string::npos,
              "unknown config key is rejected by name");
    }

    // Error categories: config = 2, capacity = 3.
    {
        auto r = run("trace --n 4 --p 1.5 --out " + out + "e1", dir);
        check(r.exit_code == 2 && r.err.find("--p") != std::string::npos,
              "out-of-range p is a config error naming the flag");
        r = run("trace --n 4 --K 15 --out " + out + "e2", dir);
        check(r.exit_code == 2 && r.err.find("--K") != std::string::npos,
              "odd K is a config error naming the flag");
        r = run("trace --n abc --out " + out + "e1b", dir);
        check(r.exit_code == 2, "non-numeric n is a config error");
        r = run("heatmap --n 13 --realizations 40 --out " + out + "e3", dir);
        check(r.exit_code == 3, "13-qubit heatmap is a capacity error");
        check(!std::filesystem::exists(out + "e3.heatmap.csv"),
              "failed run leaves no partial files");
        r = run("", dir);
        check(r.exit_code != 0, "missing command fails");
    }

    std::printf("%s (%d failures)\n", failures == 0 ? "ALL OK" : "FAILED", failures);
    return failures == 0 ? 0 : 1;
}
