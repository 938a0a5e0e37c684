#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "dms/core/dataset_io.hpp"
#include "dms/core/digest.hpp"
#include "dms/core/error.hpp"
#include "dms/core/fs.hpp"
#include "dms/core/ledger.hpp"
#include "dms/core/pool_io.hpp"
#include "dms/core/rng.hpp"
#include "dms/core/subprocess.hpp"
#include "dms/core/validate.hpp"
#include "test_support.hpp"

namespace dms {
namespace {

TEST(Digest, KnownVectors) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Digest, FieldsAreLengthPrefixed) {
  Sha256 a, b;
  a.field("ab").field("c");
  b.field("a").field("bc");
  EXPECT_NE(a.hex(), b.hex());
}

TEST(Digest, PoolContentIgnoresOrder) {
  EXPECT_EQ(pool_content_digest({"b", "a", "c"}), pool_content_digest({"c", "b", "a"}));
  EXPECT_NE(pool_content_digest({"a"}), pool_content_digest({"a", "b"}));
}

TEST(Digest, DeriveSeedDependsOnParts) {
  EXPECT_EQ(derive_seed(1, {"x", "y"}), derive_seed(1, {"x", "y"}));
  EXPECT_NE(derive_seed(1, {"x", "y"}), derive_seed(2, {"x", "y"}));
  EXPECT_NE(derive_seed(1, {"xy"}), derive_seed(1, {"x", "y"}));
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
}

TEST(Rng, BelowStaysInRange) {
  Rng r(3);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(r.below(7), 7u);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Rng, SampleIndicesDistinctAscending) {
  Rng r(9);
  auto idx = sample_indices(50, 20, r);
  ASSERT_EQ(idx.size(), 20u);
  for (std::size_t i = 1; i < idx.size(); ++i) EXPECT_LT(idx[i - 1], idx[i]);
  EXPECT_LT(idx.back(), 50u);
  EXPECT_EQ(sample_indices(5, 5, r), (std::vector<std::size_t>{0, 1, 2, 3, 4}));
}

TEST(KeepRangeTest, RejectsInvertedOrNaN) {
  EXPECT_THROW(KeepRange::make(5, 4), InvalidArgument);
  EXPECT_THROW(KeepRange::make(std::nan(""), 1), InvalidArgument);
  auto r = KeepRange::make(2, 3);
  EXPECT_TRUE(r.contains(2));
  EXPECT_TRUE(r.contains(3));
  EXPECT_FALSE(r.contains(3.0001));
  EXPECT_TRUE(KeepRange::all().contains(-1e300));
}

TEST(KeepRangeTest, JsonKeepsInfinities) {
  Json j = KeepRange::all();
  EXPECT_EQ(j.dump(), R"(["-inf","inf"])");
  EXPECT_EQ(j.get<KeepRange>(), KeepRange::all());
}

TEST(PoolInvariants, ProvenanceMatchesLabel) {
  DataPool p;
  p.pool_id = "r";
  p.sample_ids = {"a", "b"};
  EXPECT_NO_THROW(check_invariants(p));
  p.sample_ids = {"a", "a"};
  EXPECT_THROW(check_invariants(p), InvalidArgument);
  p.sample_ids = {"a"};
  p.split_label = SplitLabel::high;
  EXPECT_THROW(check_invariants(p), InvalidArgument);
  p.provenance.push_back({"op", KeepRange::make(1, 2), {}});
  EXPECT_NO_THROW(check_invariants(p));
}

TEST(RecipeInvariants, RejectsEmptyAndRepeats) {
  Recipe r;
  EXPECT_THROW(check_invariants(r), InvalidArgument);
  r.ops = {{"a", {}, {}, {}}, {"a", {}, {}, {}}};
  EXPECT_THROW(check_invariants(r), InvalidArgument);
  r.ops.pop_back();
  EXPECT_NO_THROW(check_invariants(r));
}

TEST(DatasetIo, RoundTrip) {
  Dataset d;
  d.samples.push_back({"a", "héllo", {{"image", "x.png"}}, {{"len", 5.0}, {"r", 0.1}}});
  d.samples.push_back({"b", "", {}, {}});
  std::istringstream in(serialize_dataset(d));
  const Dataset back = parse_dataset(in);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back.samples[0], d.samples[0]);
  EXPECT_EQ(back.samples[1], d.samples[1]);
  EXPECT_EQ(dataset_digest(back), dataset_digest(d));
}

TEST(DatasetIo, GeneratesMissingIds) {
  std::istringstream in("{\"text\":\"x\"}\n{\"text\":\"y\"}\n");
  const Dataset d = parse_dataset(in);
  EXPECT_EQ(d.samples[1].id, "00000001");
}

TEST(DatasetIo, ParseErrorCarriesLine) {
  std::istringstream in("{\"id\":\"a\",\"text\":\"x\"}\n{oops\n");
  try {
    parse_dataset(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(DatasetIo, MissingFileIsIoError) {
  EXPECT_THROW(load_dataset("/nonexistent/ds.jsonl"), IoError);
}

TEST(Validate, FlagsDuplicateIds) {
  Dataset d;
  d.samples.push_back({"x", "a", {}, {}});
  d.samples.push_back({"x", "b", {}, {}});
  const auto r = validate_dataset(d);
  EXPECT_EQ(r.duplicate_ids, std::vector<std::string>{"x"});
  EXPECT_FALSE(r.valid());
}

TEST(Validate, EmptyDatasetIsValid) {
  const auto r = validate_dataset(Dataset{});
  EXPECT_TRUE(r.valid());
  EXPECT_EQ(r.sample_count, 0u);
}

TEST(Validate, FlagsNonFiniteStat) {
  std::istringstream in("{\"id\":\"a\",\"text\":\"x\",\"stats\":{\"s\":\"nan\"}}\n");
  const auto r = validate_dataset(parse_dataset(in));
  ASSERT_EQ(r.non_finite_stats.size(), 1u);
  EXPECT_EQ(r.non_finite_stats[0].second, "s");
}

TEST(PoolIo, RoundTrip) {
  TempDir dir;
  DataPool p;
  p.pool_id = "op/high";
  p.sample_ids = {"3", "1", "2"};
  p.provenance.push_back({"op", KeepRange::make(2, kInf), {{"rep_len", 2}}});
  p.split_label = SplitLabel::high;
  p.declared_size = 5;
  p.bucket = 2;
  write_pool(dir.path() / "pool.json", p);
  EXPECT_EQ(read_pool(dir.path() / "pool.json"), p);
}

LedgerEntry entry(const std::string& id, const std::string& digest, JobStatus s = JobStatus::completed) {
  LedgerEntry e;
  e.job_id = id;
  e.job_kind = "pool";
  e.input_digest = digest;
  e.output_digest = "o";
  e.status = s;
  return e;
}

TEST(Ledger, RejectsDuplicateCompletedEntry) {
  RunLedger l;
  l.append(entry("a", "d1"));
  EXPECT_THROW(l.append(entry("a", "d1")), InvalidArgument);
  EXPECT_NO_THROW(l.append(entry("a", "d2")));
  EXPECT_NO_THROW(l.append(entry("b", "d1", JobStatus::failed)));
  EXPECT_NO_THROW(l.append(entry("b", "d1", JobStatus::failed)));
  EXPECT_EQ(l.completed("a")->input_digest, "d2");
  EXPECT_FALSE(l.completed("b").has_value());
  EXPECT_EQ(l.count(JobStatus::failed), 2u);
}

TEST(Ledger, ReloadIgnoresTornLine) {
  TempDir dir;
  const auto path = dir.path() / "ledger.jsonl";
  {
    RunLedger l(path);
    l.append(entry("a", "d1"));
    l.append(entry("b", "d2"));
  }
  {
    std::ofstream out(path, std::ios::app);
    out << "{\"job_id\":\"c\",\"inp";
  }
  RunLedger back(path);
  ASSERT_EQ(back.entries().size(), 2u);
  EXPECT_EQ(back.entries()[1], entry("b", "d2"));
  back.append(entry("c", "d3"));
  RunLedger again(path);
  EXPECT_EQ(again.entries().size(), 3u);
}

TEST(Subprocess, CapturesStreamsAndExitCode) {
  TempDir dir;
  auto argv = shell_command("echo out; echo err >&2; echo \"$FOO\"; exit 4");
  const auto r = run_process(argv, {{"FOO", "bar"}}, dir.path());
  EXPECT_EQ(r.exit_code, 4);
  EXPECT_EQ(r.stdout_text, "out\nbar\n");
  EXPECT_EQ(r.stderr_text, "err\n");
}

TEST(Subprocess, StderrTailKeepsEnd) {
  ProcessResult r;
  r.stderr_text = std::string(5000, 'x') + "END";
  EXPECT_EQ(r.stderr_tail(3), "END");
  EXPECT_LE(r.stderr_tail().size(), 2048u);
}

TEST(Subprocess, MissingProgramIsIoError) {
  TempDir dir;
  EXPECT_THROW(run_process({"/nonexistent/program"}, {}, dir.path()), IoError);
}

TEST(Fs, SafeFileNameFlattensSlashes) {
  EXPECT_EQ(safe_file_name("p/pool/op/high").find('/'), std::string::npos);
  EXPECT_EQ(safe_file_name("a b.c-d"), "a_b.c-d");
}

}  // namespace
}  // namespace dms
