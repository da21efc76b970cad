#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <random>
#include <thread>

#include <unistd.h>

#include <httplib.h>

#include "error.hpp"
#include "fixtures.hpp"
#include "service.hpp"

using namespace sstar;
using namespace sstar::service;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

Json paintcan_game(std::string position, std::string human, std::string to_move = "Left") {
  return {{"ruleset", "paintcan"}, {"position", position}, {"humanSide", human}, {"toMove", to_move}};
}

const char* kCoverBlackout =
    R"({"lightCount":2,"lights":"11","allOff":["10","01","11"],"oneOn":["10","11"],"passBudget":1,"toMove":"AllOff"})";

// Plays random legal human moves to the end; returns the final state.
Json play_out(GameService& svc, Json st, std::mt19937_64& rng) {
  while (st["status"] == "ongoing") {
    const auto& legal = st["legalMoves"];
    EXPECT_FALSE(legal.empty());
    st = svc.post_move(st["id"], legal[rng() % legal.size()]);
  }
  return st;
}

std::string temp_path(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / (name + std::to_string(::getpid()));
  std::filesystem::remove(p);
  return p.string();
}

}  // namespace

TEST(Service, CreatePaintCan) {
  GameService svc;
  auto st = svc.create(paintcan_game("BRGYB/GGGG", "Left"));
  EXPECT_EQ(st["id"], "g1");
  EXPECT_EQ(st["ruleset"], "paintcan");
  EXPECT_EQ(st["position"], "BRGYB/GGGG");
  EXPECT_EQ(st["toMove"], "Left");
  EXPECT_EQ(st["status"], "ongoing");
  EXPECT_EQ(st["legalMoves"].size(), 3u + 4u);  // bricks 0,2,4 and all four Greens
  EXPECT_TRUE(st["history"].empty());
  EXPECT_EQ(svc.create(paintcan_game("G", "Left"))["id"], "g2");
  EXPECT_EQ(svc.session_count(), 2u);
}

TEST(Service, AiOpensWhenHumanMovesSecond) {
  GameService svc;
  auto st = svc.create(paintcan_game("BRGYB/GGGG", "Right"));
  ASSERT_EQ(st["history"].size(), 1u);
  EXPECT_EQ(st["history"][0]["by"], "ai");
  EXPECT_EQ(st["history"][0]["side"], "Left");
  EXPECT_EQ(st["toMove"], "Right");
}

TEST(Service, IllegalMovesAreRejected) {
  GameService svc;
  auto st = svc.create(paintcan_game("BRGYB/GGGG", "Left"));
  const std::string id = st["id"];
  EXPECT_EQ(code_of([&] { svc.post_move(id, {{"stack", 0}, {"brick", 1}}); }), ErrorCode::IllegalMove);
  EXPECT_EQ(code_of([&] { svc.post_move(id, {{"stack", 7}, {"brick", 0}}); }), ErrorCode::IllegalMove);
  EXPECT_EQ(code_of([&] { svc.post_move(id, {{"stack", 0}}); }), ErrorCode::Parse);
  // Nothing changed.
  EXPECT_EQ(svc.state(id)["position"], "BRGYB/GGGG");
  EXPECT_TRUE(svc.state(id)["history"].empty());
}

TEST(Service, FinishedGames) {
  GameService svc;
  auto st = svc.create(paintcan_game("B", "Left"));
  st = svc.post_move(st["id"], {{"stack", 0}, {"brick", 0}});
  EXPECT_EQ(st["status"], "finished");
  EXPECT_EQ(st["winner"], "Left");
  EXPECT_TRUE(st["legalMoves"].empty());
  EXPECT_EQ(code_of([&] { svc.post_move(st["id"], {{"stack", 0}, {"brick", 0}}); }), ErrorCode::IllegalMove);
  EXPECT_EQ(code_of([&] { svc.hint(st["id"]); }), ErrorCode::IllegalMove);
  // Created already over: the side to move is stuck.
  auto stuck = svc.create(paintcan_game("R", "Right", "Left"));
  EXPECT_EQ(stuck["status"], "finished");
  EXPECT_EQ(stuck["winner"], "Right");
}

TEST(Service, UnknownSessionsAndBadRequests) {
  GameService svc;
  EXPECT_EQ(code_of([&] { svc.state("g42"); }), ErrorCode::NotFound);
  EXPECT_EQ(code_of([&] { svc.post_move("nope", Json::object()); }), ErrorCode::NotFound);
  EXPECT_EQ(code_of([&] { svc.create({{"ruleset", "chess"}, {"position", ""}}); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([&] { svc.create({{"ruleset", "paintcan"}}); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([&] { svc.create(paintcan_game("BQ", "Left")); }), ErrorCode::Parse);
}

TEST(Service, ReplayMatchesState) {
  GameService svc;
  std::mt19937_64 rng(3);
  auto st = svc.create(paintcan_game("BRGYB/GGGG/GBR", "Left"));
  st = play_out(svc, st, rng);
  EXPECT_EQ(svc.replay(st["id"]), st["position"]);
  EXPECT_GE(st["history"].size(), 2u);
}

TEST(Service, Hint) {
  GameService svc;
  auto st = svc.create(paintcan_game("BRGYB/GGGG", "Left"));
  auto h = svc.hint(st["id"]);
  EXPECT_EQ(h["side"], "Left");
  EXPECT_NO_THROW(svc.post_move(st["id"], h["move"]));
}

TEST(ServiceEngine, StrategyWhenItApplies) {
  // {0,*1|*2}: one left-0 game, Left to move.
  PaintCanState st{paintcan::parse_position(paintcan::to_text(paintcan::superstar_to_stack(Superstar({0, 1}, {2})))),
                   Player::Left};
  auto m = engine_move(st, 1000);
  EXPECT_EQ(m.source, "strategy");
  EXPECT_FALSE(m.approximate);
}

TEST(ServiceEngine, HeuristicWhenOverBudget) {
  std::mt19937_64 rng(5);
  blackout::Position pos;
  pos.lights = blackout::Bits(8);
  pos.lights.set();
  for (int side = 0; side < 2; ++side) {
    for (int i = 0; i < 8; ++i) {
      blackout::Bits b(8);
      while (b.none()) {
        for (std::size_t k = 0; k < 8; ++k) b[k] = rng() & 1;
      }
      (side ? pos.one_on : pos.all_off).push_back(b);
    }
  }
  auto m = engine_move(pos, 5);
  EXPECT_TRUE(m.approximate);
  EXPECT_EQ(m.source, "heuristic");
  EXPECT_NO_THROW(blackout::apply_move(pos, formats::blackout_move_from_json(m.move, pos)));
}

// The AI never loses a position it can win, whatever the human does.
TEST(ServiceProperty, AiConvertsWinningPaintCanPositions) {
  std::mt19937_64 rng(7);
  const char colors[] = {'B', 'R', 'G', 'Y'};
  for (int t = 0; t < 100; ++t) {
    std::string text;
    for (std::size_t s = 0, n = 1 + rng() % 3; s < n; ++s) {
      if (!text.empty()) text += '/';
      std::string stack;
      for (std::size_t h = 0, H = 1 + rng() % 4; h < H; ++h) stack += colors[rng() % 4];
      while (!stack.empty() && stack.back() == 'Y') stack.pop_back();
      if (stack.empty()) stack = "G";
      text += stack;
    }
    const Player first = rng() % 2 ? Player::Left : Player::Right;
    Solver solver;
    const bool first_wins = solver.wins_moving_first(paintcan::position_value(paintcan::parse_position(text)), first);
    const Player ai = first_wins ? first : opponent(first);
    GameService svc;
    auto st = svc.create(paintcan_game(text, std::string(to_string(opponent(ai))), std::string(to_string(first))));
    st = play_out(svc, st, rng);
    ASSERT_EQ(st["winner"], std::string(to_string(ai))) << text;
  }
}

TEST(ServiceProperty, AllOffAiWinsCoverInstance) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    GameService svc;
    auto st = svc.create({{"ruleset", "blackout"}, {"position", formats::parse_json(kCoverBlackout)}, {"humanSide", "OneOn"}});
    EXPECT_EQ(st["humanSide"], "OneOn");
    ASSERT_EQ(st["history"].size(), 1u);
    st = play_out(svc, st, rng);
    ASSERT_EQ(st["winner"], "AllOff");
    EXPECT_EQ(svc.replay(st["id"]), st["position"]);
  }
}

TEST(Service, Reduce) {
  GameService svc;
  auto worked = formats::parse_json(fixtures::worked_epmx_json());
  EXPECT_EQ(svc.reduce("epmx-to-stars", worked)["output"]["sum"], fixtures::kWorkedSum);
  auto pc = svc.reduce("epmx-to-paintcan", worked)["output"]["position"].get<std::string>();
  EXPECT_EQ(std::count(pc.begin(), pc.end(), '/'), 4);
  auto bo = svc.reduce("setcover-to-blackout", formats::parse_json(R"({"elements":3,"sets":[[1,2,3]],"k":1})"));
  EXPECT_EQ(bo["output"]["allOff"].size(), 7u);
  EXPECT_EQ(bo["kind"], "setcover-to-blackout");
  auto cnf = svc.reduce("3sat-to-epmx", {{"dimacs", "p cnf 3 3\n1 2 3 0\n-1 -2 0\n-1 -3 0\n"}});
  EXPECT_EQ(cnf["output"]["variables"].size(), 6u);
  auto comets = svc.reduce("stars-to-comets", {{"sum", fixtures::kWorkedSum}});
  EXPECT_EQ(comets["output"]["upCount"], 0);
  EXPECT_EQ(code_of([&] { svc.reduce("magic", worked); }), ErrorCode::NotFound);
  EXPECT_EQ(code_of([&] { svc.reduce("3sat-to-epmx", worked); }), ErrorCode::Parse);
  // A reduced board is playable.
  auto game = svc.create({{"ruleset", "paintcan"}, {"position", pc}, {"humanSide", "Right"}});
  EXPECT_EQ(game["status"], "ongoing");
}

TEST(Service, Persistence) {
  const auto path = temp_path("sstar-log-");
  std::mt19937_64 rng(13);
  Json finished, ongoing;
  {
    GameService svc({.persist_path = path});
    finished = play_out(svc, svc.create(paintcan_game("BRGYB/GGGG", "Left")), rng);
    ongoing = svc.create({{"ruleset", "blackout"}, {"position", formats::parse_json(kCoverBlackout)}, {"humanSide", "OneOn"}});
  }
  GameService again({.persist_path = path});
  EXPECT_EQ(again.session_count(), 2u);
  EXPECT_EQ(again.state(finished["id"]), finished);
  EXPECT_EQ(again.state(ongoing["id"]), ongoing);
  EXPECT_EQ(again.create(paintcan_game("G", "Left"))["id"], "g3");
  std::filesystem::remove(path);
}

TEST(Service, ConcurrentSessions) {
  GameService svc;
  std::vector<std::thread> threads;
  std::atomic<int> finished{0};
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      std::mt19937_64 rng(100 + t);
      auto st = svc.create(paintcan_game("BRGYB/GGGG/GBR", "Left"));
      st = play_out(svc, st, rng);
      if (st["status"] == "finished") ++finished;
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(finished.load(), 8);
  EXPECT_EQ(svc.session_count(), 8u);
}

// ------------------------------------------------------------------- HTTP

TEST(ServiceHttp, Endpoints) {
  GameService svc;
  BackgroundServer server(svc);
  httplib::Client cli("127.0.0.1", server.port());

  auto health = cli.Get("/healthz");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);

  auto created = cli.Post("/games", paintcan_game("BRGYB/GGGG", "Left").dump(), "application/json");
  ASSERT_TRUE(created);
  ASSERT_EQ(created->status, 200);
  auto st = formats::parse_json(created->body);
  const std::string id = st["id"];

  auto got = cli.Get("/games/" + id);
  ASSERT_TRUE(got);
  EXPECT_EQ(formats::parse_json(got->body), st);

  auto illegal = cli.Post("/games/" + id + "/moves", R"({"stack":0,"brick":1})", "application/json");
  ASSERT_TRUE(illegal);
  EXPECT_EQ(illegal->status, 409);
  EXPECT_EQ(formats::parse_json(illegal->body)["error"], "illegal-move");

  auto bad = cli.Post("/games/" + id + "/moves", "{not json", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);

  auto hint = cli.Get("/games/" + id + "/hint");
  ASSERT_TRUE(hint);
  EXPECT_EQ(hint->status, 200);
  auto move = formats::parse_json(hint->body)["move"];

  auto moved = cli.Post("/games/" + id + "/moves", move.dump(), "application/json");
  ASSERT_TRUE(moved);
  EXPECT_EQ(moved->status, 200);
  EXPECT_GE(formats::parse_json(moved->body)["history"].size(), 1u);

  auto missing = cli.Get("/games/g999");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  EXPECT_EQ(formats::parse_json(missing->body)["error"], "not-found");

  auto reduced = cli.Post("/reduce/epmx-to-stars", fixtures::worked_epmx_json(), "application/json");
  ASSERT_TRUE(reduced);
  EXPECT_EQ(reduced->status, 200);
  EXPECT_EQ(formats::parse_json(reduced->body)["output"]["sum"], fixtures::kWorkedSum);

  auto unknown = cli.Post("/reduce/nothing", "{}", "application/json");
  ASSERT_TRUE(unknown);
  EXPECT_EQ(unknown->status, 404);
}

// Load a set-cover file through /reduce, then play it as OneOn over HTTP.
TEST(ServiceHttp, ReductionToFinishedGame) {
  GameService svc;
  BackgroundServer server(svc);
  httplib::Client cli("127.0.0.1", server.port());
  auto reduced = cli.Post("/reduce/setcover-to-blackout", R"({"elements":3,"sets":[[1,2,3]],"k":1})",
                          "application/json");
  ASSERT_TRUE(reduced);
  ASSERT_EQ(reduced->status, 200);
  auto position = formats::parse_json(reduced->body)["output"];
  Json req = {{"ruleset", "blackout"}, {"position", position}, {"humanSide", "OneOn"}};
  auto created = cli.Post("/games", req.dump(), "application/json");
  ASSERT_TRUE(created);
  auto st = formats::parse_json(created->body);
  const std::string id = st["id"];
  while (st["status"] == "ongoing") {
    auto wrong = cli.Post("/games/" + id + "/moves", R"({"kind":"switch","side":"AllOff","row":0,"action":1})",
                          "application/json");
    ASSERT_TRUE(wrong);
    ASSERT_EQ(wrong->status, 409);
    auto r = cli.Post("/games/" + id + "/moves", st["legalMoves"][0].dump(), "application/json");
    ASSERT_TRUE(r);
    ASSERT_EQ(r->status, 200);
    st = formats::parse_json(r->body);
  }
  blackout::Solver offline;
  EXPECT_EQ(st["winner"], std::string(blackout::role_name(offline.solve(formats::blackout_from_json(position)))));
}
