#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qopdist/commands.h"
#include "qopdist/matrix_file.h"
#include "qopdist/maximizers.h"
#include "qopdist/metrics.h"
#include "qopdist/report.h"
#include "qopdist/suites.h"

using namespace qopdist;
namespace fs = std::filesystem;

namespace {

class TempDir {
   public:
    TempDir() {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        path_ = fs::temp_directory_path() / (std::string("qopdist_") + info->test_suite_name() + "_" + info->name());
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

   private:
    fs::path path_;
};

std::string write_text(const std::string& path, const std::string& text) {
    std::ofstream(path) << text;
    return path;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string write_state(const TempDir& dir, const std::string& name, const ComplexMatrix& m) {
    const std::string path = dir.file(name);
    write_matrix_file(path, MatrixFile{"state", static_cast<int>(m.rows()), static_cast<int>(m.cols()), {m}});
    return path;
}

ComplexMatrix pure(const ComplexVector& v) { return v * v.adjoint(); }

double value_after(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string k;
        double v;
        if (fields >> k >> v && k == key) return v;
    }
    ADD_FAILURE() << "no " << key << " in " << text;
    return NAN;
}

struct CmdResult {
    int code;
    std::string out;
    std::string err;
};

template <typename F>
CmdResult run(F&& f) {
    std::ostringstream out, err;
    const int code = f(out, err);
    return {code, out.str(), err.str()};
}

int run_binary(const std::string& args) {
    const int status = std::system((std::string(QOPDIST_BINARY) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(matrix_file, state_round_trip_is_lossless) {
    TempDir dir;
    Rng rng(1);
    const DensityMatrix rho = random_density(4, 3, rng);
    save_state(dir.file("rho.json"), rho);
    const DensityMatrix back = load_state(dir.file("rho.json"));
    EXPECT_EQ(back.matrix(), rho.matrix());
}

TEST(matrix_file, kraus_round_trip_is_lossless) {
    TempDir dir;
    Rng rng(2);
    const QuantumOperation e = random_operation(3, 2, 3, rng);
    save_kraus_set(dir.file("e.json"), e);
    const QuantumOperation back = load_kraus_set(dir.file("e.json"));
    ASSERT_EQ(back.kraus().size(), 3u);
    for (size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(back.kraus()[i], e.kraus()[i]);
    }
    EXPECT_EQ(back.dim_in(), 3);
    EXPECT_EQ(back.dim_out(), 2);
}

TEST(matrix_file, document_layout) {
    const MatrixFile f = parse_matrix_file(R"({"kind": "hermitian", "dim_rows": 2, "dim_cols": 2,
        "entries": [[1, 0], [0, -2], [0, 2], [3, 0]]})");
    EXPECT_EQ(f.kind, "hermitian");
    EXPECT_EQ(f.matrices[0](0, 1), Complex(0.0, -2.0));
    EXPECT_EQ(f.matrices[0](1, 0), Complex(0.0, 2.0));
    EXPECT_EQ(parse_matrix_file(format_matrix_file(f)).matrices[0], f.matrices[0]);
}

TEST(matrix_file, parse_errors) {
    EXPECT_THROW(parse_matrix_file("{"), ParseError);
    EXPECT_THROW(parse_matrix_file("[]"), ParseError);
    EXPECT_THROW(parse_matrix_file(R"({"dim_rows": 2, "dim_cols": 2, "entries": [[1, 0]]})"), ParseError);
    EXPECT_THROW(parse_matrix_file(R"({"dim_rows": 1, "dim_cols": 1, "entries": [[1]]})"), ParseError);
    EXPECT_THROW(parse_matrix_file(R"({"dim_rows": 0, "dim_cols": 1, "entries": []})"), ParseError);
    EXPECT_THROW(parse_matrix_file(R"({"kind": "vector", "dim_rows": 1, "dim_cols": 1, "entries": [[1, 0]]})"),
                 ParseError);
    EXPECT_THROW(parse_matrix_file(R"({"kind": "kraus_set", "dim_in": 2, "dim_out": 1,
        "operators": [{"dim_rows": 1, "dim_cols": 1, "entries": [[1, 0]]}]})"),
                 ParseError);
}

TEST(matrix_file, invalid_state_is_a_parse_error) {
    TempDir dir;
    const std::string path = write_state(dir, "bad.json", HermitianOp::diagonal({0.6, 0.5}).matrix());
    EXPECT_THROW(load_state(path), ParseError);
    EXPECT_THROW(load_state(dir.file("missing.json")), ParseError);
    EXPECT_THROW(load_kraus_set(path), ParseError);
}

TEST(report, round_trip_is_lossless) {
    SuiteReport r;
    r.suite_name = "demo";
    r.seed = 18446744073709551615ull;
    r.elapsed_seconds = 0.125;
    r.add(CaseRecord{"first", 1.0 / 3.0, true, {{"x", 0.1}, {"y", -2e-300}}});
    r.add(CaseRecord{"second", 0.0, false, {}});
    r.add(CaseRecord{"third", NAN, true, {}});
    EXPECT_EQ(r.n_cases, 3);
    EXPECT_EQ(r.n_failures, 2);
    EXPECT_TRUE(std::isfinite(r.worst_residual));
    SuiteReport empty;
    empty.suite_name = "empty";
    const std::string text = format_reports({r, empty});
    EXPECT_EQ(text.substr(0, text.find('\n')), R"({"schema":"qopdist.suite_report","version":1})");
    const std::vector<SuiteReport> back = parse_reports(text);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0], r);
    EXPECT_EQ(back[1], empty);
    EXPECT_EQ(format_reports(back), text);
}

TEST(report, rejects_bad_documents) {
    EXPECT_THROW(parse_reports(""), ParseError);
    EXPECT_THROW(parse_reports(R"({"schema":"other","version":1})"), ParseError);
    EXPECT_THROW(parse_reports("{\"schema\":\"qopdist.suite_report\",\"version\":1}\n"
                               "{\"record\":\"suite\",\"suite_name\":\"x\",\"n_cases\":1,\"n_failures\":0,"
                               "\"worst_residual\":0.0,\"seed\":1,\"elapsed_seconds\":0.0}\n"),
                 ParseError);
}

TEST(default_tolerance, environment_override) {
    unsetenv("QOPDIST_DEFAULT_TOL");
    EXPECT_EQ(default_tolerance(), 1e-9);
    setenv("QOPDIST_DEFAULT_TOL", "1e-6", 1);
    EXPECT_EQ(default_tolerance(), 1e-6);
    setenv("QOPDIST_DEFAULT_TOL", "garbage", 1);
    EXPECT_EQ(default_tolerance(), 1e-9);
    unsetenv("QOPDIST_DEFAULT_TOL");
}

TEST(cmd_dist, examples) {
    TempDir dir;
    const std::string up = write_state(dir, "up.json", HermitianOp::diagonal({1.0, 0.0}).matrix());
    const std::string down = write_state(dir, "down.json", HermitianOp::diagonal({0.0, 1.0}).matrix());
    const std::string mixed = write_state(dir, "mixed.json", HermitianOp::diagonal({0.75, 0.25}).matrix());

    CmdResult r = run([&](auto& o, auto& e) { return cmd_dist(up, down, "trace", o, e); });
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1.000000000000\n");
    r = run([&](auto& o, auto& e) { return cmd_dist(mixed, mixed, "fidelity", o, e); });
    EXPECT_EQ(r.out, "1.000000000000\n");

    const double sine = std::stod(run([&](auto& o, auto& e) { return cmd_dist(up, mixed, "sine", o, e); }).out);
    const double trace = std::stod(run([&](auto& o, auto& e) { return cmd_dist(up, mixed, "trace", o, e); }).out);
    EXPECT_NEAR(sine - trace, 0.25, 1e-9);
}

TEST(cmd_dist, exit_codes) {
    TempDir dir;
    const std::string up = write_state(dir, "up.json", HermitianOp::diagonal({1.0, 0.0}).matrix());
    const std::string qutrit = write_state(dir, "q.json", HermitianOp::diagonal({1.0, 0.0, 0.0}).matrix());
    const std::string junk = write_text(dir.file("junk.json"), "not json");
    EXPECT_EQ(run([&](auto& o, auto& e) { return cmd_dist(up, junk, "trace", o, e); }).code, kExitParse);
    EXPECT_EQ(run([&](auto& o, auto& e) { return cmd_dist(up, qutrit, "trace", o, e); }).code, kExitDimension);
    EXPECT_EQ(run([&](auto& o, auto& e) { return cmd_dist(up, up, "bogus", o, e); }).code, kExitParse);
}

TEST(cmd_maximize, writes_a_certified_maximizer) {
    TempDir dir;
    Rng rng(3);
    const std::string rho = dir.file("rho.json"), sigma = dir.file("sigma.json"), out = dir.file("e.json");
    save_state(rho, random_density(3, 3, rng));
    save_state(sigma, random_density(3, 2, rng));
    const CmdResult r = run([&](auto& o, auto& e) { return cmd_maximize(rho, sigma, 2, "on-q", out, o, e); });
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(value_after(r.out, "e_distance"), value_after(r.out, "trace_distance"), 1e-10);
    const QuantumOperation e = load_kraus_set(out);
    EXPECT_EQ(certify_maximizer(e, load_state(rho), load_state(sigma)).mode, MaximizerMode::kOnQ);

    const CmdResult same = run([&](auto& o, auto& e) { return cmd_maximize(rho, rho, 2, "on-q", out, o, e); });
    EXPECT_EQ(same.code, kExitDegenerate);
    EXPECT_EQ(run([&](auto& o, auto& e) { return cmd_maximize(rho, sigma, 2, "sideways", out, o, e); }).code,
              kExitParse);
}

TEST(cmd_pairs, writes_distinct_maximized_pairs) {
    TempDir dir;
    const std::string kraus = dir.file("e.json");
    save_kraus_set(kraus, QuantumOperation({HermitianOp::diagonal({1.0, 1.0, 0.0}).matrix()}));
    const CmdResult r = run([&](auto& o, auto& e) { return cmd_pairs(kraus, 0.5, 3, 11, dir.file("pairs"), 1e-9, o, e); });
    ASSERT_EQ(r.code, 0) << r.err;
    const QuantumOperation e = load_kraus_set(kraus);
    std::vector<ComplexMatrix> seen;
    for (int i = 0; i < 3; ++i) {
        const DensityMatrix a = load_state(dir.file("pairs/pair_" + std::to_string(i) + "_rho.json"));
        const DensityMatrix b = load_state(dir.file("pairs/pair_" + std::to_string(i) + "_sigma.json"));
        EXPECT_NEAR(e_distance(e, a, b), 0.5, 1e-9);
        EXPECT_NEAR(trace_distance(a, b), 0.5, 1e-9);
        for (const ComplexMatrix& m : seen) {
            EXPECT_GT(max_abs(m - a.matrix()), 1e-6);
        }
        seen.push_back(a.matrix());
    }
}

TEST(cmd_pairs, exit_codes) {
    TempDir dir;
    const std::string kraus = dir.file("e.json");
    save_kraus_set(kraus, QuantumOperation({HermitianOp::diagonal({1.0, 0.0}).matrix()}));
    EXPECT_EQ(run([&](auto& o, auto& e) { return cmd_pairs(kraus, 1.5, 3, 1, dir.file("p"), 1e-9, o, e); }).code,
              kExitParse);
    EXPECT_EQ(run([&](auto& o, auto& e) { return cmd_pairs(kraus, 0.0, 3, 1, dir.file("p"), 1e-9, o, e); }).code,
              kExitParse);
    const std::string tp = dir.file("tp.json");
    save_kraus_set(tp, QuantumOperation({ComplexMatrix::Identity(2, 2)}));
    const CmdResult r = run([&](auto& o, auto& e) { return cmd_pairs(tp, 0.5, 3, 1, dir.file("p"), 1e-9, o, e); });
    EXPECT_EQ(r.code, kExitShape);
    EXPECT_NE(r.err.find("spectrum"), std::string::npos);
}

TEST(cmd_verify, suites_and_reports) {
    TempDir dir;
    CmdResult r = run([&](auto& o, auto& e) { return cmd_verify("nope", 1, 0, 1e-9, "", false, o, e); });
    EXPECT_EQ(r.code, kExitParse);

    r = run([&](auto& o, auto& e) { return cmd_verify("thm5", 1, 50, 1e-9, dir.file("t5.txt"), false, o, e); });
    ASSERT_EQ(r.code, 0) << r.out << r.err;
    const std::vector<SuiteReport> t5 = parse_reports(read_text(dir.file("t5.txt")));
    ASSERT_EQ(t5.size(), 1u);
    EXPECT_EQ(t5[0].n_failures, 0);
    EXPECT_NEAR(t5[0].details[0].values.at("value"), 0.25, 1e-4);

    r = run([&](auto& o, auto& e) { return cmd_verify("cloning", 1, 0, 1e-9, "", false, o, e); });
    ASSERT_EQ(r.code, 0);
    const std::vector<SuiteReport> cl = parse_reports(r.out);
    EXPECT_EQ(cl[0].n_cases, 201);
    for (size_t i = 1; i < cl[0].details.size(); ++i) {
        EXPECT_GT(cl[0].details[i].values.at("ratio"), 1.0 / std::sqrt(2.0));
    }
}

TEST(cmd_verify, all_is_byte_reproducible) {
    TempDir dir;
    for (const char* name : {"a.txt", "b.txt"}) {
        const CmdResult r = run([&](auto& o, auto& e) { return cmd_verify("all", 7, 5, 1e-9, dir.file(name), false, o, e); });
        EXPECT_EQ(r.code, 0) << r.out;
    }
    EXPECT_EQ(read_text(dir.file("a.txt")), read_text(dir.file("b.txt")));
    EXPECT_EQ(parse_reports(read_text(dir.file("a.txt"))).size(), suite_names().size());
}

TEST(cmd_clone, examples) {
    TempDir dir;
    const std::string up = write_state(dir, "up.json", HermitianOp::diagonal({1.0, 0.0}).matrix());
    const std::string down = write_state(dir, "down.json", HermitianOp::diagonal({0.0, 1.0}).matrix());
    ComplexVector tilted(2);
    tilted << 0.6, 0.8;
    const std::string tilt = write_state(dir, "tilt.json", pure(tilted));
    const std::string mixed = write_state(dir, "mixed.json", HermitianOp::diagonal({0.5, 0.5}).matrix());

    CmdResult r = run([&](auto& o, auto& e) { return cmd_clone(up, down, o, e); });
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(value_after(r.out, "factor"), 1.0, 1e-12);

    r = run([&](auto& o, auto& e) { return cmd_clone(up, tilt, o, e); });
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(value_after(r.out, "Omega"), 0.6, 1e-12);
    EXPECT_NEAR(value_after(r.out, "factor"), 0.72887, 1e-5);
    EXPECT_NEAR(value_after(r.out, "factor"), std::sqrt(1.36) / 1.6, 1e-9);

    EXPECT_EQ(run([&](auto& o, auto& e) { return cmd_clone(up, mixed, o, e); }).code, kExitPurity);
    EXPECT_EQ(run([&](auto& o, auto& e) { return cmd_clone(up, up, o, e); }).code, kExitDegenerate);
}

TEST(binary, exit_codes_through_the_process) {
    TempDir dir;
    const std::string up = write_state(dir, "up.json", HermitianOp::diagonal({1.0, 0.0}).matrix());
    const std::string down = write_state(dir, "down.json", HermitianOp::diagonal({0.0, 1.0}).matrix());
    const std::string mixed = write_state(dir, "mixed.json", HermitianOp::diagonal({0.5, 0.5}).matrix());
    const std::string qutrit = write_state(dir, "q.json", HermitianOp::diagonal({1.0, 0.0, 0.0}).matrix());
    EXPECT_EQ(run_binary("dist " + up + " " + down + " --metric trace"), 0);
    EXPECT_EQ(run_binary("dist " + up + " " + qutrit), 3);
    EXPECT_EQ(run_binary("dist " + up), 2);
    EXPECT_EQ(run_binary("frobnicate"), 2);
    EXPECT_EQ(run_binary("maximize " + up + " " + up + " --out " + dir.file("e.json")), 4);
    EXPECT_EQ(run_binary("maximize " + up + " " + down + " --dim-out 1 --out " + dir.file("e.json")), 0);
    EXPECT_EQ(run_binary("pairs " + dir.file("e.json") + " --d-target 2"), 2);
    EXPECT_EQ(run_binary("clone " + up + " " + mixed), 6);
    EXPECT_EQ(run_binary("verify nosuch"), 2);
    EXPECT_EQ(run_binary("verify thm1 --seed 3 --cases 2 --report " + dir.file("r.txt")), 0);
    EXPECT_EQ(run_binary("--help"), 0);
}

TEST(binary, dist_prints_twelve_decimals) {
    TempDir dir;
    const std::string up = write_state(dir, "up.json", HermitianOp::diagonal({1.0, 0.0}).matrix());
    const std::string down = write_state(dir, "down.json", HermitianOp::diagonal({0.0, 1.0}).matrix());
    const std::string out = dir.file("out.txt");
    ASSERT_EQ(std::system((std::string(QOPDIST_BINARY) + " dist " + up + " " + down + " > " + out).c_str()), 0);
    EXPECT_EQ(read_text(out), "1.000000000000\n");
}
