#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <set>

#include "trse/bench.hpp"
#include "trse/confirm.hpp"
#include "trse/trace.hpp"
#include "workspace.hpp"

using namespace trse;
using namespace trse::cli;

namespace {

struct Globals {
  std::string dir = ".";
  std::optional<uint64_t> seed;
  std::unique_ptr<RandomSource> rng;

  RandomSource& random() {
    if (!rng) {
      if (seed) {
        rng = std::make_unique<SeededRandom>(*seed);
      } else {
        rng = std::make_unique<SystemRandom>();
      }
    }
    return *rng;
  }
};

Bytes ReadInput(const std::string& path) {
  if (path == "-") {
    std::string data((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    return ToBytes(data);
  }
  return ToBytes(ReadFile(path));
}

void WriteOutput(const std::string& path, std::span<const uint8_t> data) {
  if (path == "-") {
    std::cout.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    std::cout.flush();
    return;
  }
  WriteFile(path, std::string(data.begin(), data.end()));
}

UserKeyPair LoadKey(const Workspace& ws, const std::string& id) {
  if (!ValidId(id)) throw UsageError("invalid id: " + id);
  const fs::path path = ws.KeyPath(id);
  if (!fs::exists(path)) throw DataError("no key file for " + id);
  UserKeyPair key = UserKeyPair::Decode(ws.curve(), ws.Load(path, "key"));
  if (key.id != id) throw DataError(path.string() + " holds the key of " + key.id);
  return key;
}

// Loads share files, checks each against the published commitments and
// drops duplicates.
std::vector<GlobalShare> LoadShares(const Workspace& ws, const std::vector<std::string>& files) {
  std::vector<GlobalShare> shares;
  std::set<PartyIndex> seen;
  for (const std::string& f : files) {
    GlobalShare s = GlobalShare::Decode(ws.curve(), ws.Load(f, "share"));
    if (s.index < 1 || s.index > ws.params().n) throw DataError(f + ": share index out of range");
    if (!(s.value * ws.curve().Generator() == ShareVerificationKey(s.index, ws.params().commitments))) {
      throw DataError(f + ": share does not match the published commitments");
    }
    if (seen.insert(s.index).second) shares.push_back(std::move(s));
  }
  return shares;
}

Bundle LoadBundle(const Workspace& ws, const std::string& path) {
  return Bundle::Decode(ws.curve(), ws.Load(path, "signcryption"));
}

Point RegisteredKey(const Registry& registry, const std::string& id) {
  const std::optional<Point> pub = registry.LookupById(id);
  if (!pub) throw DataError("unknown id: " + id);
  return *pub;
}

// --- commands ---------------------------------------------------------------

int Setup(Globals& g, int t, int n, const std::string& curve_id, bool force) {
  if (t < 1 || n < 1 || t > n || n > 32) throw UsageError("need 1 <= t <= N <= 32");
  const Curve* curve = nullptr;
  try {
    curve = &Curve::Get(curve_id);
  } catch (const std::invalid_argument&) {
    throw UsageError("unknown curve: " + curve_id);
  }
  if (curve->id() == "toy97") throw UsageError("toy97 is a test curve");
  Workspace ws(g.dir);
  if (fs::exists(ws.ParamsPath()) && !force) {
    throw DataError(ws.ParamsPath().string() + " exists (use --force to overwrite)");
  }
  DkgResult dkg = RunDkg(*curve, static_cast<size_t>(t), static_cast<size_t>(n), g.random());
  const Params params{curve, static_cast<uint16_t>(t), static_cast<uint16_t>(n), dkg.ypub,
                      dkg.commitments};
  const std::string hash = params.Hash();
  WriteFile(ws.ParamsPath(), Armor("params", hash, params.Encode()));
  for (const GlobalShare& s : dkg.shares) {
    ws.Store(ws.SharePath(s.index), "share", s.Encode());
    fs::permissions(ws.SharePath(s.index), fs::perms::owner_read | fs::perms::owner_write);
  }
  ws.StoreRegistry(Registry(*curve));
  std::cout << "params " << hash << " t=" << t << " n=" << n << " curve=" << curve->id() << "\n";
  return kExitOk;
}

int Keygen(Globals& g, const std::string& id, const std::vector<std::string>& share_files) {
  if (!ValidId(id)) throw UsageError("invalid id: " + id);
  Workspace ws(g.dir);
  Registry registry = ws.LoadRegistry();
  if (registry.LookupById(id)) throw DataError("id already registered: " + id);
  const std::vector<GlobalShare> shares = LoadShares(ws, share_files);
  const size_t t = ws.params().t;
  if (shares.size() < t) {
    throw UsageError("need " + std::to_string(t) + " distinct share files, got " +
                     std::to_string(shares.size()));
  }
  // The center's key exists only for the duration of this call.
  const Scalar s = ReconstructSecret(shares, t);
  if (!(s * ws.curve().Generator() == ws.params().ypub)) {
    throw DataError("shares do not reconstruct the master key");
  }
  const PartialPrivateKey partial = IssuePartialKey(s, ws.params().ypub, id, g.random());
  const UserKeyPair key =
      DeriveFullKey(partial, Scalar::RandomNonZero(ws.curve(), g.random()), g.random());
  try {
    registry.Append(id, key.pub);
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  ws.Store(ws.KeyPath(id), "key", key.Encode());
  fs::permissions(ws.KeyPath(id), fs::perms::owner_read | fs::perms::owner_write);
  ws.StoreRegistry(registry);
  std::cout << "registered " << id << " " << ToHex(key.pub.Encode()) << "\n";
  return kExitOk;
}

int SigncryptCmd(Globals& g, const std::string& signer_id, const std::vector<std::string>& ring_ids,
                 const std::string& in, const std::string& out) {
  Workspace ws(g.dir);
  if (std::find(ring_ids.begin(), ring_ids.end(), signer_id) == ring_ids.end()) {
    throw UsageError("signer " + signer_id + " is not in the ring");
  }
  std::set<std::string> distinct(ring_ids.begin(), ring_ids.end());
  if (distinct.size() != ring_ids.size()) throw UsageError("ring lists an id twice");
  const Registry registry = ws.LoadRegistry();
  // Canonical order (by encoded key): the signer's slot is determined by the
  // keys, not by who signs, and the same member set always yields the same L,
  // which linking needs.
  std::vector<std::pair<Bytes, std::string>> members;
  for (const std::string& id : ring_ids) members.emplace_back(RegisteredKey(registry, id).Encode(), id);
  std::sort(members.begin(), members.end());
  std::vector<std::string> ids;
  RingPublic ring;
  for (const auto& [enc, id] : members) {
    ids.push_back(id);
    ring.keys.push_back(Point::Decode(ws.curve(), enc));
    ring.ids.push_back(id);
  }
  const UserKeyPair signer = LoadKey(ws, signer_id);
  if (!(RegisteredKey(registry, signer_id) == signer.pub)) {
    throw DataError("key file and registry disagree for " + signer_id);
  }
  const size_t position = static_cast<size_t>(
      std::find(ids.begin(), ids.end(), signer_id) - ids.begin());
  const Bytes message = ReadInput(in);
  Ciphertext ct = Signcrypt({ring, position}, signer, ws.params().ypub, message, g.random());
  const Bundle bundle{std::move(ring), std::move(ct)};
  ws.Store(out, "signcryption", bundle.Encode());
  std::cout << "signcrypted n=" << ids.size() << " bytes=" << message.size() << "\n";
  return kExitOk;
}

int VerifyCmd(Globals& g, const std::string& file) {
  Workspace ws(g.dir);
  const Bundle b = LoadBundle(ws, file);
  if (!Verify(b.ring, ws.params().ypub, b.ct)) {
    std::cout << "invalid\n";
    return kExitReject;
  }
  std::cout << "valid\n";
  return kExitOk;
}

int DecryptCmd(Globals& g, const std::string& file, const std::string& signer_id,
               const std::string& out) {
  Workspace ws(g.dir);
  const Bundle b = LoadBundle(ws, file);
  const Bytes m = Decrypt(b.ct, signer_id, b.ring, ws.params().ypub);
  WriteOutput(out, m);
  if (out != "-") std::cout << "decrypted bytes=" << m.size() << "\n";
  return kExitOk;
}

int TraceCmd(Globals& g, const std::string& file, const std::vector<std::string>& share_files) {
  Workspace ws(g.dir);
  const Bundle b = LoadBundle(ws, file);
  if (!Verify(b.ring, ws.params().ypub, b.ct)) throw ProtocolReject("ciphertext does not verify");
  const std::vector<GlobalShare> shares = LoadShares(ws, share_files);
  // Each supervisor answers from its own share file.
  std::vector<DecryptionShare> answers;
  for (const GlobalShare& s : shares) answers.push_back(MakeDecryptionShare(s, b.ct.c1, g.random()));
  const TraceResult r =
      AggregateTrace(answers, ws.params().commitments, ws.params().t, b.ct, ws.LoadRegistry());
  if (!r.id) {
    std::cout << "unregistered " << ToHex(r.signer_pub.Encode()) << "\n";
    return kExitReject;
  }
  std::cout << "signer " << *r.id << " " << ToHex(r.signer_pub.Encode()) << "\n";
  return kExitOk;
}

int ConfirmCmd(Globals& g, const std::string& file, const std::string& id,
               const std::string& proof_in, const std::string& proof_out) {
  Workspace ws(g.dir);
  const Bundle b = LoadBundle(ws, file);
  const Point pub = RegisteredKey(ws.LoadRegistry(), id);
  std::optional<ConfirmProof> proof;
  if (proof_in.empty()) {
    try {
      proof = ConfirmProve(LoadKey(ws, id), b.ct, b.ring, g.random());
    } catch (const ProtocolReject&) {
      std::cout << "refused: not the signer\n";
      return kExitReject;
    }
  } else {
    proof = ConfirmProof::Decode(ws.curve(), ws.Load(proof_in, "confirm"));
  }
  if (!proof_out.empty()) ws.Store(proof_out, "confirm", proof->Encode());
  if (!ConfirmVerify(*proof, pub, b.ct, b.ring)) {
    std::cout << "rejected\n";
    return kExitReject;
  }
  std::cout << "confirmed " << id << "\n";
  return kExitOk;
}

int DenyCmd(Globals& g, const std::string& file, const std::string& id,
            const std::string& transcript_in, const std::string& transcript_out) {
  Workspace ws(g.dir);
  const Bundle b = LoadBundle(ws, file);
  const Point pub = RegisteredKey(ws.LoadRegistry(), id);
  std::optional<DenyTranscript> t;
  if (!transcript_in.empty()) {
    t = DenyTranscript::Decode(ws.curve(), ws.Load(transcript_in, "deny"));
  } else {
    // Both roles run locally, each message round-tripping through its encoding.
    const UserKeyPair key = LoadKey(ws, id);
    std::optional<DenyProver> started;
    try {
      started = DenyProver::Start(key, b.ct, b.ring, g.random());
    } catch (const ProtocolReject&) {
      std::cout << ToString(DenyVerdict::kDenialFailed) << "\n";
      return kExitReject;
    }
    DenyProver& prover = *started;
    const DenyCommitment m = DenyCommitment::Decode(ws.curve(), prover.commitment().Encode());
    const Scalar c = DenyChallenge(ws.curve(), g.random());
    const Scalar s = DecodeDenyResponse(
        ws.curve(), EncodeDenyResponse(prover.Respond(DecodeDenyChallenge(ws.curve(), EncodeDenyChallenge(c)))));
    t = DenyTranscript{m, c, s};
  }
  if (!transcript_out.empty()) ws.Store(transcript_out, "deny", t->Encode());
  const DenyVerdict v = DenyVerify(*t, pub, b.ct, b.ring);
  if (v != DenyVerdict::kAccept) {
    std::cout << ToString(v) << "\n";
    return kExitReject;
  }
  std::cout << "denied " << id << "\n";
  return kExitOk;
}

int LinkCmd(Globals& g, const std::string& a, const std::string& b) {
  Workspace ws(g.dir);
  const Bundle x = LoadBundle(ws, a);
  const Bundle y = LoadBundle(ws, b);
  for (const Bundle* z : {&x, &y}) {
    if (!Verify(z->ring, ws.params().ypub, z->ct)) throw ProtocolReject("ciphertext does not verify");
  }
  bool linked = false;
  try {
    linked = Link(x.ct, x.ring, y.ct, y.ring);
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  std::cout << (linked ? "linked" : "unlinked") << "\n";
  return kExitOk;
}

int BenchCmd(const std::string& curve_id, size_t reps, bool table, bool quick, bool sizes) {
  const Curve* curve = nullptr;
  try {
    curve = &Curve::Get(curve_id);
  } catch (const std::invalid_argument&) {
    throw UsageError("unknown curve: " + curve_id);
  }
  if (sizes) {
    std::cout << bench::ToTable(bench::ReportSizes(*curve, 10, 32));
    return kExitOk;
  }
  const std::vector<size_t> loop_sizes = quick ? std::vector<size_t>{10} : std::vector<size_t>{10, 50, 90};
  const std::vector<size_t> msm_sizes =
      quick ? std::vector<size_t>{20} : std::vector<size_t>{20, 60, 100, 180};
  std::vector<bench::BenchRow> rows;
  for (size_t n : loop_sizes) {
    const bench::Comparison c = bench::CompareSigningLoop(*curve, n, reps);
    rows.push_back(c.baseline);
    rows.push_back(c.optimized);
  }
  for (size_t n : msm_sizes) {
    const bench::Comparison c = bench::CompareMsm(*curve, n, reps);
    rows.push_back(c.baseline);
    rows.push_back(c.optimized);
  }
  std::cout << (table ? bench::ToTable(rows) : bench::ToCsv(rows));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Traceable ring signcryption: setup, keys, signcrypt, verify, trace, confirm/deny, link"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("-d,--dir", g.dir, "workspace directory")->capture_default_str();
  app.add_option("--seed", g.seed, "deterministic randomness (testing only)");

  int rc = kExitOk;
  std::function<int()> run;

  int t = 1, n = 1;
  std::string curve_id = "sm2p256v1";
  bool force = false;
  auto* setup = app.add_subcommand("setup", "run the supervisors' DKG and write parameters and shares");
  setup->add_option("-t,--threshold", t, "shares needed to act")->required();
  setup->add_option("-n,--supervisors", n, "number of supervisors N")->required();
  setup->add_option("--curve", curve_id, "sm2p256v1 or secp256k1")->capture_default_str();
  setup->add_flag("--force", force, "overwrite an existing workspace");
  setup->callback([&] { run = [&] { return Setup(g, t, n, curve_id, force); }; });

  std::string id;
  std::vector<std::string> share_files;
  auto* keygen = app.add_subcommand("keygen", "issue and register a certificateless key");
  keygen->alias("register");
  keygen->add_option("id", id, "identity")->required();
  keygen->add_option("-s,--share", share_files, "supervisor share files (at least t)")->required();
  keygen->callback([&] { run = [&] { return Keygen(g, id, share_files); }; });

  std::string signer, in = "-", out;
  std::vector<std::string> ring_ids;
  auto* sc = app.add_subcommand("signcrypt", "signcrypt a message for a ring");
  sc->add_option("--signer", signer, "signer id")->required();
  sc->add_option("--ring", ring_ids, "ring member ids (comma separated or repeated)")
      ->required()
      ->delimiter(',');
  sc->add_option("-i,--in", in, "message file, - for stdin")->capture_default_str();
  sc->add_option("-o,--out", out, "signcryption file")->required();
  sc->callback([&] { run = [&] { return SigncryptCmd(g, signer, ring_ids, in, out); }; });

  std::string file;
  auto* verify = app.add_subcommand("verify", "check a signcryption");
  verify->add_option("file", file)->required();
  verify->callback([&] { run = [&] { return VerifyCmd(g, file); }; });

  auto* decrypt = app.add_subcommand("decrypt", "verify and recover the message");
  decrypt->add_option("file", file)->required();
  decrypt->add_option("--signer", signer, "signer id the message was keyed to")->required();
  decrypt->add_option("-o,--out", out, "output file, - for stdout")->default_val("-");
  decrypt->callback([&] { run = [&] { return DecryptCmd(g, file, signer, out); }; });

  auto* trace = app.add_subcommand("trace", "recover the signer with t supervisor shares");
  trace->add_option("file", file)->required();
  trace->add_option("-s,--share", share_files, "supervisor share files")->required();
  trace->callback([&] { run = [&] { return TraceCmd(g, file, share_files); }; });

  std::string proof_in, proof_out;
  auto* confirm = app.add_subcommand("confirm", "prove (and check) authorship");
  confirm->add_option("file", file)->required();
  confirm->add_option("--id", id, "claimed signer")->required();
  confirm->add_option("--proof", proof_in, "check a recorded proof instead of proving");
  confirm->add_option("--proof-out", proof_out, "record the proof");
  confirm->callback([&] { run = [&] { return ConfirmCmd(g, file, id, proof_in, proof_out); }; });

  auto* deny = app.add_subcommand("deny", "run the denial protocol for a non-signer");
  deny->add_option("file", file)->required();
  deny->add_option("--id", id, "denying member")->required();
  deny->add_option("--transcript", proof_in, "check a recorded transcript instead");
  deny->add_option("--transcript-out", proof_out, "record the transcript");
  deny->callback([&] { run = [&] { return DenyCmd(g, file, id, proof_in, proof_out); }; });

  std::string other;
  auto* link = app.add_subcommand("link", "tell whether two signcryptions share a signer");
  link->add_option("a", file)->required();
  link->add_option("b", other)->required();
  link->callback([&] { run = [&] { return LinkCmd(g, file, other); }; });

  std::string bench_curve = "secp256k1";
  size_t reps = 11;
  bool table = false, quick = false, sizes = false;
  auto* bench = app.add_subcommand("bench", "timing CSV: signing loop and MSM strategies");
  bench->add_option("--curve", bench_curve)->capture_default_str();
  bench->add_option("--reps", reps, "repetitions (at least 11)")->capture_default_str();
  bench->add_flag("--table", table, "human-readable table instead of CSV");
  bench->add_flag("--quick", quick, "smallest sizes only");
  bench->add_flag("--sizes", sizes, "serialized size report instead of timings");
  bench->callback([&] { run = [&] { return BenchCmd(bench_curve, reps, table, quick, sizes); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    rc = run();
  } catch (const ProtocolReject& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    rc = kExitReject;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    rc = kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = kExitData;
  } catch (const DecodeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    rc = kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = kExitData;
  }
  return rc;
}
