#include "nilgen/cli.hpp"
#include "nilgen/error.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace nilgen {
namespace {

namespace fs = std::filesystem;
using testing::random_system;
using testing::vec;

struct CliRun {
    int code;
    std::string out;
};

CliRun run(const std::vector<std::string>& args, IndepFn indep = indep0) {
    std::ostringstream out, err;
    const int code = dispatch(args, out, err, indep);
    return {code, out.str()};
}

std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

bool has_line(const std::string& report, const std::string& line) {
    return ("\n" + report).find("\n" + line + "\n") != std::string::npos;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("nilgen_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

Errc parse_error_code(const std::string& text, std::size_t& line) {
    try {
        parse_system(text);
    } catch (const Error& e) {
        line = e.line();
        return e.code();
    }
    ADD_FAILURE() << "parsed: " << text;
    return Errc::TooLarge;
}

TEST(AltIo, ReferenceExample) {
    const AltSystem s = parse_system("ALT v1\np=3 n=1 dimV=2\nbeta 0 1 : 1\n");
    EXPECT_EQ(s, symplectic_plane(Field(3), 1, vec({1})));
    EXPECT_EQ(serialize_system(s), "ALT v1\np=3 n=1 dimV=2\nbeta 0 1 : 1\n");
}

TEST(AltIo, RoundTripRandom) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        const AltSystem s = random_system(rng, i % 2 ? 3 : 7, 1 + i % 3, i % 7);
        const std::string text = serialize_system(s);
        const AltSystem back = parse_system(text);
        EXPECT_EQ(back, s);
        EXPECT_EQ(serialize_system(back), text);
    }
}

TEST(AltIo, MetaAndSections) {
    AltDocument doc{symplectic_plane(Field(5), 2, vec({1, 4})), AltMeta{7, 3}, {}, {}};
    doc.sets.emplace_back("a", std::vector<GroupElement>{{vec({1, 2}), vec({0, 3})}});
    doc.maps.emplace_back("base", std::vector<FVector>{vec({1, 0}), vec({0, 1})});
    const std::string text = serialize_document(doc);
    const AltDocument back = parse_document(text);
    EXPECT_EQ(back.sys, doc.sys);
    EXPECT_EQ(back.meta, doc.meta);
    EXPECT_EQ(back.set("a"), doc.set("a"));
    EXPECT_EQ(back.map("base"), doc.map("base"));
    EXPECT_EQ(serialize_document(back), text);
    EXPECT_THROW(back.set("missing"), Error);
}

TEST(AltIo, CommentsAndBlankLines) {
    const AltSystem s = parse_system("# header\nALT v1\n\np=3 n=1 dimV=3   # sizes\nbeta 0 2 : 2\n\n");
    EXPECT_EQ(s.beta_basis(0, 2), vec({2}));
}

TEST(AltIo, ErrorsWithLines) {
    std::size_t line = 0;
    EXPECT_EQ(parse_error_code("ALT v1\np=3 n=1 dimV=2\nbeta 1 1 : 1\n", line), Errc::NotAlternating);
    EXPECT_EQ(line, 3u);
    EXPECT_EQ(parse_error_code("ALT v1\np=4 n=1 dimV=2\n", line), Errc::BadPrime);
    EXPECT_EQ(line, 2u);
    EXPECT_EQ(parse_error_code("ALT v2\np=3 n=1 dimV=2\n", line), Errc::ParseError);
    EXPECT_EQ(line, 1u);
    EXPECT_EQ(parse_error_code("ALT v1\np=3 n=1 dimV=2\nbeta 0 1 : 3\n", line), Errc::ParseError);
    EXPECT_EQ(line, 3u);
    EXPECT_EQ(parse_error_code("ALT v1\np=3 n=1 dimV=2\n\nbeta 1 0 : 1\n", line), Errc::ParseError);
    EXPECT_EQ(line, 4u);
    EXPECT_EQ(parse_error_code("ALT v1\np=3 n=1 dimV=2\nbeta 0 5 : 1\n", line), Errc::ParseError);
    EXPECT_EQ(line, 3u);
    EXPECT_EQ(parse_error_code("ALT v1\np=3 n=1 dimV=3\nbeta 0 1 : 1\nbeta 0 1 : 2\n", line), Errc::ParseError);
    EXPECT_EQ(line, 4u);
    EXPECT_EQ(parse_error_code("ALT v1\np=3 n=2 dimV=2\nbeta 0 1 : 1\n", line), Errc::ParseError);
    EXPECT_EQ(line, 3u);
    EXPECT_EQ(parse_error_code("ALT v1\np=3 n=1 dimV=2\nfoo\n", line), Errc::ParseError);
    EXPECT_EQ(line, 3u);
    EXPECT_EQ(parse_error_code("", line), Errc::ParseError);
}

TEST(AltIo, ElementsAndColumns) {
    const AltSystem host = symplectic_plane(Field(3), 1, vec({1}));
    const std::vector<GroupElement> xs{{vec({1, 2}), vec({0})}, {vec({0, 0}), vec({2})}};
    EXPECT_EQ(parse_elements(serialize_elements(xs), host), xs);
    EXPECT_THROW(parse_elements("elem : 1 2 3 | 0\n", host), Error);
    const FMatrix m = FMatrix::identity(Field(3), 2);
    const auto cols = parse_columns(serialize_columns(m), Field(3), 2);
    EXPECT_EQ(FMatrix::from_columns(Field(3), cols, 2), m);
}

TEST_F(CliTest, BuildGenericDeterministic) {
    const std::vector<std::string> args{"build-generic", "-p", "3",      "-n",      "1",       "-t",
                                        "2",             "--rounds", "3", "--seed", "7", "--out", path("d.alt")};
    const CliRun a = run(args);
    ASSERT_EQ(a.code, kExitOk) << a.out;
    const std::string first = read(path("d.alt"));
    const CliRun b = run(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(read(path("d.alt")), first);
    EXPECT_TRUE(has_line(a.out, "seed=7"));
    EXPECT_TRUE(has_line(a.out, "status=0"));
    const AltDocument doc = parse_document(first);
    ASSERT_TRUE(doc.meta.has_value());
    EXPECT_EQ(doc.meta->seed, 7u);
    EXPECT_EQ(doc.meta->rounds, 3u);

    const CliRun kp = run({"kp-suite", "--in", path("d.alt"), "--trials", "1000", "--seed", "1"});
    EXPECT_EQ(kp.code, kExitOk) << kp.out;
    EXPECT_TRUE(has_line(kp.out, "failures=0"));

    const CliRun sigma = run({"check-sigma", "--in", path("d.alt"), "-t", "2"});
    EXPECT_EQ(sigma.code, kExitOk) << sigma.out;
    EXPECT_TRUE(has_line(sigma.out, "sigma3=true"));
}

TEST_F(CliTest, Tp2AllPaths) {
    const CliRun r = run({"tp2", "--rows", "4", "--cols", "4", "-p", "3", "--all-paths"});
    EXPECT_EQ(r.code, kExitOk) << r.out;
    EXPECT_TRUE(has_line(r.out, "row_pairs_certified=24"));
    EXPECT_TRUE(has_line(r.out, "paths_consistent=256"));
}

TEST_F(CliTest, UsageAndInputErrors) {
    EXPECT_EQ(run({}).code, kExitUsage);
    EXPECT_EQ(run({"no-such-command"}).code, kExitUsage);
    EXPECT_EQ(run({"kp-suite", "--trials", "abc"}).code, kExitUsage);
    EXPECT_EQ(run({"kp-suite", "--in", path("missing.alt")}).code, kExitUsage);

    write(path("bad.alt"), "ALT v1\np=3 n=1 dimV=2\nbeta 1 1 : 1\n");
    const CliRun bad = run({"kp-suite", "--in", path("bad.alt")});
    EXPECT_EQ(bad.code, kExitUsage);
    EXPECT_TRUE(has_line(bad.out, "error=NotAlternating"));
    EXPECT_TRUE(has_line(bad.out, "error_line=3"));
    EXPECT_TRUE(has_line(bad.out, "status=2"));
}

TEST_F(CliTest, Sigma3CertificatesRefail) {
    write(path("zero.alt"), serialize_system(AltSystem(Field(3), 1, 2)));
    const CliRun r = run({"check-sigma", "--in", path("zero.alt"), "-t", "2"});
    ASSERT_EQ(r.code, kExitViolation) << r.out;
    const auto certs = parse_certificates(r.out);
    ASSERT_FALSE(certs.empty());
    EXPECT_LE(certs.size(), 10u);
    EXPECT_TRUE(has_line(r.out, "certificates=" + std::to_string(certs.size())));
    for (const auto& c : certs) {
        EXPECT_EQ(c.attrs.at("check"), "sigma3");
        EXPECT_TRUE(certificate_refails(c));
    }
}

bool broken_indep(const AltSystem& d, const Elements& a, const Elements& b, const Elements& c) {
    return a.size() <= c.size() ? indep0(d, a, b, c) : indep0(d, a, {}, c);
}

TEST_F(CliTest, KpCertificatesRefail) {
    ASSERT_EQ(run({"build-generic", "-t", "2", "--out", path("d.alt")}).code, kExitOk);
    const CliRun r = run({"kp-suite", "--in", path("d.alt"), "--trials", "300", "--seed", "3"}, broken_indep);
    ASSERT_EQ(r.code, kExitViolation) << r.out;
    const auto certs = parse_certificates(r.out);
    ASSERT_FALSE(certs.empty());
    for (const auto& c : certs) {
        EXPECT_EQ(c.attrs.at("check"), "kp");
        EXPECT_TRUE(certificate_refails(c, broken_indep));
        EXPECT_FALSE(certificate_refails(c, indep0));
    }
    EXPECT_EQ(r.out, run({"kp-suite", "--in", path("d.alt"), "--trials", "300", "--seed", "3"}, broken_indep).out);
}

TEST_F(CliTest, SmallCommands) {
    const CliRun free = run({"gen-free", "-p", "3", "--rank", "3", "--out", path("f.alt")});
    EXPECT_EQ(free.code, kExitOk);
    EXPECT_TRUE(has_line(free.out, "n=3"));

    const CliRun classify = run({"classify", "-p", "3", "-n", "2", "-t", "2"});
    EXPECT_EQ(classify.code, kExitOk) << classify.out;
    EXPECT_TRUE(has_line(classify.out, "classes_dim_2=5"));

    const CliRun ip = run({"ip-witness", "-p", "3", "-m", "5", "--subset", "21"});
    EXPECT_EQ(ip.code, kExitOk) << ip.out;
    EXPECT_TRUE(has_line(ip.out, "pattern_ok=true"));

    write(path("plane.alt"), "ALT v1\np=3 n=1 dimV=2\nbeta 0 1 : 1\n");
    write(path("plane2.alt"), "ALT v1\np=3 n=1 dimV=2\nbeta 0 1 : 2\n");
    const CliRun iso = run({"iso", "--in", path("plane.alt"), "--other", path("plane2.alt")});
    EXPECT_EQ(iso.code, kExitOk) << iso.out;
    EXPECT_TRUE(has_line(iso.out, "isomorphic=true"));

    write(path("a.txt"), "elem : 1 0 | 0\n");
    write(path("c.txt"), "elem : 0 1 | 0\n");
    const CliRun indep = run({"indep", "--in", path("plane.alt"), "--a", path("a.txt"), "--c", path("c.txt")});
    EXPECT_EQ(indep.code, kExitOk) << indep.out;
    EXPECT_TRUE(has_line(indep.out, "indep=true"));

    const CliRun su = run({"su-rank-check", "--in", path("plane.alt")});
    EXPECT_EQ(su.code, kExitOk) << su.out;
    EXPECT_TRUE(has_line(su.out, "discrepancies=0"));
}

} // namespace
} // namespace nilgen
