#include "codeplay/env/pong.hpp"

#include <algorithm>

#include "codeplay/env/physics.hpp"

namespace codeplay::env {

namespace P = physics::pong;

namespace {

bool vertical_overlap(const ObjectState& ball, const ObjectState& paddle) {
  return ball.y + ball.h > paddle.y && ball.y < paddle.y + paddle.h;
}

int sign_or_positive(int v) { return v < 0 ? -1 : 1; }

}  // namespace

void PongSim::reset(std::uint64_t seed) {
  rng_.seed(seed);
  events_ = {};
  state_ = {};
  const int mid = (P::kTopWall + P::kBottomWall) / 2 - P::kPaddleH / 2;
  state_.player = {P::kPlayerX, mid, P::kPaddleW, P::kPaddleH, 0, 0};
  state_.enemy = {P::kEnemyX, mid, P::kPaddleW, P::kPaddleH, 0, 0};
  serve(uniform_int(0, 1) == 0 ? -1 : 1);
}

void PongSim::serve(int direction) {
  const int y = uniform_int(P::kServeMinY, P::kServeMaxY);
  const int dy = P::kServeDy[static_cast<std::size_t>(uniform_int(0, 3))];
  state_.ball = {P::kServeX, y, P::kBallW, P::kBallH, direction * P::kBallSpeedX, dy};
}

void PongSim::move_enemy() {
  auto& enemy = state_.enemy;
  const auto& ball = state_.ball;
  const int centre = enemy.y + enemy.h / 2;
  int target = (P::kTopWall + P::kBottomWall) / 2;
  if (ball.dx < 0 && ball.x <= P::kEnemyReactX) target = ball.y + ball.h / 2;
  const int delta =
      std::clamp((target - centre) / P::kEnemyGainDivisor, -P::kEnemyMaxSpeed, P::kEnemyMaxSpeed);
  const int y = std::clamp(enemy.y + delta, P::kPaddleMinY, P::kPaddleMaxY);
  enemy.dy = y - enemy.y;
  enemy.y = y;
}

int PongSim::zone_dy(const ObjectState& paddle, int incoming_dy) const {
  const auto& ball = state_.ball;
  const int offset = (ball.y + ball.h / 2) - (paddle.y + paddle.h / 2);
  const int zone = std::clamp((offset + 9) * 5 / 19, 0, 4);
  if (zone == 2) return sign_or_positive(incoming_dy) * P::kZoneDy[2];
  return P::kZoneDy[static_cast<std::size_t>(zone)];
}

int PongSim::advance(int action) {
  events_ = {};
  auto& s = state_;

  const int move = action == 2 ? -P::kPaddleSpeed : action == 3 ? P::kPaddleSpeed : 0;
  const int py = std::clamp(s.player.y + move, P::kPaddleMinY, P::kPaddleMaxY);
  s.player.dy = py - s.player.y;
  s.player.y = py;
  move_enemy();

  auto& ball = s.ball;
  const int prev_x = ball.x;
  ball.x += ball.dx;
  ball.y += ball.dy;

  if (ball.y < P::kTopWall) {
    ball.y = 2 * P::kTopWall - ball.y;
    ball.dy = -ball.dy;
    events_.wall_bounce_y = true;
  } else if (ball.y > P::kBottomWall) {
    ball.y = 2 * P::kBottomWall - ball.y;
    ball.dy = -ball.dy;
    events_.wall_bounce_y = true;
  }

  int reward = 0;
  if (ball.dx > 0 && prev_x < P::kPlayerX && ball.x >= P::kPlayerX) {
    if (vertical_overlap(ball, s.player)) {
      ball.x = 2 * P::kPlayerX - ball.x;
      ball.dx = -ball.dx;
      ball.dy = zone_dy(s.player, ball.dy);
      events_.paddle_hit = true;
    } else {
      ++s.enemy_points;
      reward = -1;
      events_.point_scored = true;
      serve(1);
    }
  } else if (ball.dx < 0 && prev_x > P::kEnemyX && ball.x <= P::kEnemyX) {
    if (vertical_overlap(ball, s.enemy)) {
      ball.x = 2 * P::kEnemyX - ball.x;
      ball.dx = -ball.dx;
      ball.dy = zone_dy(s.enemy, ball.dy);
      events_.paddle_hit = true;
    } else {
      ++s.player_points;
      reward = 1;
      events_.point_scored = true;
      serve(-1);
    }
  }
  return reward;
}

bool PongSim::game_over() const {
  return state_.player_points >= P::kWinningScore || state_.enemy_points >= P::kWinningScore;
}

Observation PongSim::observe() const {
  Observation obs;
  obs.objects.emplace("Player", state_.player);
  obs.objects.emplace("Enemy", state_.enemy);
  obs.objects.emplace("Ball", state_.ball);
  obs.lives = 0;
  obs.score = state_.player_points - state_.enemy_points;
  return obs;
}

}  // namespace codeplay::env
