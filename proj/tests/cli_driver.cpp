// Exercises the tv4 command line surface end to end: spawns the binary,
// checks exit codes, parses the JSON metrics and the sweep CSV.

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int g_failures = 0;

void check(bool ok, const std::string& what) {
  std::printf("%s  %s\n", ok ? "ok  " : "FAIL", what.c_str());
  if (!ok) ++g_failures;
}

struct Runner {
  std::string exe;
  fs::path dir;

  std::pair<int, std::string> run(const std::string& args) const {
    const std::string out_file = (dir / "stdout.txt").string();
    const std::string cmd = exe + " " + args + " > " + out_file + " 2> " +
                            (dir / "stderr.txt").string();
    const int rc = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
  }

  std::string file(const std::string& name) const { return (dir / name).string(); }
};

json parse_line(const std::string& out) {
  return json::parse(out.substr(0, out.find('\n')));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: tv4_cli_driver <path-to-tv4>\n");
    return 2;
  }
  Runner r;
  r.exe = argv[1];
  r.dir = fs::temp_directory_path() / ("tv4_cli_" + std::to_string(::getpid()));
  fs::create_directories(r.dir);

  // synth fixtures
  {
    auto [rc, out] = r.run("synth --kind piecewise --size 48 --out " + r.file("clean.pgm"));
    check(rc == 0 && fs::exists(r.file("clean.pgm")), "synth writes a fixture image");
    auto [rc2, out2] = r.run("synth --kind piecewise --size 48 --noise-sigma 0.18 --seed 3 --out " +
                             r.file("noisy.pgm"));
    check(rc2 == 0, "synth with noise succeeds");
  }

  // tv evaluation: constant image gives 0
  {
    std::ofstream pgm(r.file("const.pgm"), std::ios::binary);
    pgm << "P5\n4 4\n255\n";
    for (int i = 0; i < 16; ++i) pgm.put(static_cast<char>(100));
    pgm.close();
    auto [rc, out] = r.run("tv --in " + r.file("const.pgm") + " --model prn");
    const json m = parse_line(out);
    check(rc == 0 && std::abs(m["value"].get<double>()) < 1e-12, "tv of a constant image is 0");
  }

  // tv on the 2x2 fixture values
  {
    std::ofstream pgm(r.file("quad.pgm"), std::ios::binary);
    pgm << "P5\n2 2\n255\n";
    for (int v : {10, 20, 30, 40}) pgm.put(static_cast<char>(v));
    pgm.close();
    auto [rc_iso, out_iso] = r.run("tv --in " + r.file("quad.pgm") + " --model iso");
    auto [rc_prn, out_prn] = r.run("tv --in " + r.file("quad.pgm") + " --model prn");
    const double scale = 10.0 / 255.0;  // pixel steps of 10/255
    const double iso_expect = (std::sqrt(5.0) + 3.0) * scale;
    const double prn_expect = (std::sqrt(14.0) + 2.0 + std::sqrt(2.0)) * scale;
    check(rc_iso == 0 &&
              std::abs(parse_line(out_iso)["value"].get<double>() - iso_expect) < 1e-9,
          "tv iso matches the 2x2 fixture");
    check(rc_prn == 0 &&
              std::abs(parse_line(out_prn)["value"].get<double>() - prn_expect) < 1e-9,
          "tv prn matches the 2x2 fixture");
  }

  // unknown model -> usage error (exit 2)
  {
    auto [rc, out] = r.run("tv --in " + r.file("const.pgm") + " --model bogus");
    check(rc == 2, "unknown TV model exits with the usage code");
  }

  // missing file -> error exit 1
  {
    auto [rc, out] = r.run("tv --in " + r.file("nope.pgm") + " --model iso");
    check(rc == 1, "missing input file exits with the failure code");
  }

  // denoise: tiny lambda keeps a clean image almost unchanged
  {
    auto [rc, out] = r.run("denoise --in " + r.file("clean.pgm") + " --out " + r.file("out1.pgm") +
                           " --tv iso --lambda 1e-9 --iters 200 --ref " + r.file("clean.pgm"));
    const json m = parse_line(out);
    check(rc == 0 && m["rel_err_clean_denom"].get<double>() <= 1e-3,
          "tiny lambda denoise is a near-identity");
  }

  // denoise defaults: --tv new picks up lambda 0.075
  {
    auto [rc, out] = r.run("denoise --in " + r.file("noisy.pgm") + " --out " + r.file("out2.pgm") +
                           " --tv new --iters 60 --ref " + r.file("clean.pgm"));
    const json m = parse_line(out);
    check(rc == 0 && m["lambda"].get<double>() == 0.075, "default lambda for --tv new is 0.075");
    check(m.contains("rel_err_clean_denom") && m.contains("rel_err_denoised_denom"),
          "metrics carry both error denominators");
    check(m.contains("iterations") && m.contains("residual") && m.contains("runtime"),
          "metrics carry iterations, residual and runtime");
  }

  // upscale: constant image stays constant and feasible; no --ref, no error keys
  {
    std::ofstream pgm(r.file("lo.pgm"), std::ios::binary);
    pgm << "P5\n4 4\n255\n";
    for (int i = 0; i < 16; ++i) pgm.put(static_cast<char>(77));
    pgm.close();
    auto [rc, out] = r.run("upscale --in " + r.file("lo.pgm") + " --out " + r.file("hi.pgm") +
                           " --tv new --scale 4 --iters 150");
    const json m = parse_line(out);
    check(rc == 0 && m["feasibility_fro"].get<double>() <= 1e-6,
          "upscaled constant image is feasible");
    check(!m.contains("rel_err_clean_denom"), "metrics omit error fields without --ref");
  }

  // sweep: explicit single lambda; CSV schema
  {
    auto [rc, out] = r.run("sweep --in " + r.file("noisy.pgm") + " --ref " + r.file("clean.pgm") +
                           " --tv iso --lambdas 0.15 --iters 150 --out " + r.file("sweep.csv"));
    const json m = parse_line(out);
    std::ifstream csv(r.file("sweep.csv"));
    std::string header, row, extra;
    std::getline(csv, header);
    std::getline(csv, row);
    const bool no_extra = !std::getline(csv, extra);
    check(rc == 0 && header == "lambda,rel_err", "sweep CSV header is lambda,rel_err");
    check(no_extra && row.substr(0, 4) == "0.15", "length-1 sweep writes exactly one row");
    check(m["argmin_lambda"].get<double>() == 0.15, "argmin matches the only row");
  }

  // selfcheck passes on a clean build
  {
    auto [rc, out] = r.run("selfcheck");
    check(rc == 0, "selfcheck exits 0");
    check(out.find("closed-form adjoints") != std::string::npos &&
              out.find("interior") != std::string::npos,
          "selfcheck prints a nonempty discrepancy report");
  }

  std::error_code ec;
  fs::remove_all(r.dir, ec);
  std::printf("%s (%d failures)\n", g_failures == 0 ? "cli driver: PASS" : "cli driver: FAIL",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
