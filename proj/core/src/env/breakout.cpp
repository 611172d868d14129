#include "codeplay/env/breakout.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>

namespace codeplay::env {

namespace B = physics::breakout;

namespace {

int reflect_x(int x) {
  if (x < B::kLeftWall) return 2 * B::kLeftWall - x;
  if (x > B::kRightWall) return 2 * B::kRightWall - x;
  return x;
}

bool overlaps(int ax0, int ax1, int bx0, int bx1) { return ax0 < bx1 && bx0 < ax1; }

int sign_or_positive(int v) { return v < 0 ? -1 : 1; }

/// Speeds up (or restores) a velocity component while keeping its sign.
int rescale_dx(int dx, bool fast) {
  const auto& from = fast ? B::kBaseDx : B::kFastDx;
  const auto& to = fast ? B::kFastDx : B::kBaseDx;
  const int mag = std::abs(dx);
  for (std::size_t i = 0; i < from.size(); ++i)
    if (from[i] == mag) return sign_or_positive(dx) * to[i];
  return dx;
}

}  // namespace

ObjectState BreakoutSim::brick_rect(int row, int col) {
  return {B::kBrickLeft + B::kBrickW * col, B::kRowY[static_cast<std::size_t>(row)],
          B::kBrickW, B::kBrickH, 0, 0};
}

int BreakoutSim::bricks_remaining() const {
  int n = 0;
  for (const auto& row : state_.alive) n += static_cast<int>(std::count(row.begin(), row.end(), true));
  return n;
}

void BreakoutSim::fill_wall() {
  for (auto& row : state_.alive) row.fill(true);
}

void BreakoutSim::reset(std::uint64_t seed) {
  rng_.seed(seed);
  events_ = {};
  state_ = {};
  state_.paddle = {B::kPaddleStartX, B::kPaddleY, B::kPaddleW, B::kPaddleH, 0, 0};
  fill_wall();
  launch();
}

// Automatic relaunch. The serve is aimed so that a paddle which does not move
// cannot return it: inaction never scores.
void BreakoutSim::launch() {
  state_.fast = false;
  const auto& paddle = state_.paddle;
  const int steps = (B::kPaddleY - B::kLaunchY + B::kBaseDy - 1) / B::kBaseDy;
  auto landing_x = [&](int x, int dx) {
    for (int i = 0; i < steps; ++i) {
      x += dx;
      if (x < B::kLeftWall || x > B::kRightWall) {
        x = reflect_x(x);
        dx = -dx;
      }
    }
    return x;
  };
  auto misses = [&](int land) {
    return !overlaps(land, land + B::kBallW, paddle.x - B::kLaunchMissMargin,
                     paddle.x + paddle.w + B::kLaunchMissMargin);
  };

  std::optional<ObjectState> ball;
  for (int attempt = 0; attempt < 64 && !ball; ++attempt) {
    const int x = uniform_int(B::kLaunchMinX, B::kLaunchMaxX);
    const int dx = B::kLaunchDx[static_cast<std::size_t>(uniform_int(0, 3))];
    if (misses(landing_x(x, dx))) ball = ObjectState{x, B::kLaunchY, B::kBallW, B::kBallH, dx, B::kBaseDy};
  }
  if (!ball) {
    // Paddle-far side, straight down.
    const int x = paddle.x > (B::kLeftWall + B::kRightWall) / 2 ? B::kLaunchMinX : B::kLaunchMaxX;
    ball = ObjectState{x, B::kLaunchY, B::kBallW, B::kBallH, 0, B::kBaseDy};
  }
  state_.ball = *ball;
}

int BreakoutSim::resolve_bricks(int prev_x, int prev_y) {
  auto& ball = state_.ball;
  const int x0 = std::min(prev_x, ball.x);
  const int x1 = std::max(prev_x, ball.x) + ball.w;
  const int y0 = std::min(prev_y, ball.y);
  const int y1 = std::max(prev_y, ball.y) + ball.h;
  const bool moving_up = ball.dy < 0;

  std::optional<BreakoutSim::Brick> hit;
  ObjectState hit_rect;
  for (int row = 0; row < 6; ++row) {
    for (int col = 0; col < B::kBricksPerRow; ++col) {
      if (!state_.alive[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]) continue;
      const ObjectState r = brick_rect(row, col);
      if (!overlaps(x0, x1, r.x, r.x + r.w) || !overlaps(y0, y1, r.y, r.y + r.h)) continue;
      // First brick met along the vertical direction of travel, then nearest column.
      bool better = !hit;
      if (hit) {
        const int face = moving_up ? r.y + r.h : r.y;
        const int best_face = moving_up ? hit_rect.y + hit_rect.h : hit_rect.y;
        if (face != best_face) {
          better = moving_up ? face > best_face : face < best_face;
        } else {
          const int c = ball.x + ball.w / 2;
          better = std::abs(r.x + r.w / 2 - c) < std::abs(hit_rect.x + hit_rect.w / 2 - c);
        }
      }
      if (better) {
        hit = Brick{row, col};
        hit_rect = r;
      }
    }
  }
  if (!hit) return 0;

  state_.alive[static_cast<std::size_t>(hit->row)][static_cast<std::size_t>(hit->col)] = false;
  events_.brick_hit = true;

  const bool side_entry = overlaps(prev_y, prev_y + ball.h, hit_rect.y, hit_rect.y + hit_rect.h);
  if (!side_entry) {
    if (moving_up) {
      const int face = hit_rect.y + hit_rect.h;
      if (ball.y < face) ball.y = 2 * face - ball.y;
    } else {
      const int face = hit_rect.y;
      if (ball.y + ball.h > face) ball.y = 2 * face - ball.y - 2 * ball.h;
    }
    ball.dy = -ball.dy;
  } else {
    if (ball.dx > 0) {
      const int face = hit_rect.x;
      if (ball.x + ball.w > face) ball.x = 2 * face - ball.x - 2 * ball.w;
    } else if (ball.dx < 0) {
      const int face = hit_rect.x + hit_rect.w;
      if (ball.x < face) ball.x = 2 * face - ball.x;
    }
    ball.dx = -ball.dx;
  }
  ball.x = std::clamp(ball.x, B::kLeftWall, B::kRightWall);
  ball.y = std::max(ball.y, B::kTopWall);

  if (hit->row < B::kFastRows && !state_.fast) {
    state_.fast = true;
    ball.dx = rescale_dx(ball.dx, true);
    ball.dy = sign_or_positive(ball.dy) * B::kFastDy;
  }
  return brick_points(hit->row);
}

void BreakoutSim::resolve_paddle(int prev_y) {
  auto& ball = state_.ball;
  const auto& paddle = state_.paddle;
  if (!(ball.dy > 0 && prev_y < B::kPaddleY && ball.y >= B::kPaddleY)) return;

  if (overlaps(ball.x, ball.x + ball.w, paddle.x - B::kPaddleReach,
               paddle.x + paddle.w + B::kPaddleReach)) {
    ball.y = 2 * B::kPaddleY - ball.y;
    ball.dy = -ball.dy;
    const int offset = (ball.x + ball.w / 2) - (paddle.x + paddle.w / 2);
    const int zone = std::clamp((offset + 8) * 5 / 17, 0, 4);
    const auto& mags = state_.fast ? B::kFastDx : B::kBaseDx;
    switch (zone) {
      case 0: ball.dx = -mags[0]; break;
      case 1: ball.dx = -mags[1]; break;
      case 2: ball.dx = sign_or_positive(ball.dx) * mags[2]; break;
      case 3: ball.dx = mags[1]; break;
      default: ball.dx = mags[0]; break;
    }
    events_.paddle_hit = true;
    return;
  }

  --state_.lives;
  events_.life_lost = true;
  if (state_.lives > 0) launch();
}

int BreakoutSim::advance(int action) {
  events_ = {};
  auto& s = state_;

  const int move = action == 2 ? B::kPaddleSpeed : action == 3 ? -B::kPaddleSpeed : 0;
  const int px = std::clamp(s.paddle.x + move, B::kPaddleMinX, B::kPaddleMaxX);
  s.paddle.dx = px - s.paddle.x;
  s.paddle.x = px;

  auto& ball = s.ball;
  const int prev_x = ball.x;
  const int prev_y = ball.y;
  ball.x += ball.dx;
  ball.y += ball.dy;

  if (ball.x < B::kLeftWall || ball.x > B::kRightWall) {
    ball.x = reflect_x(ball.x);
    ball.dx = -ball.dx;
    events_.wall_bounce_x = true;
  }
  if (ball.y < B::kTopWall) {
    ball.y = 2 * B::kTopWall - ball.y;
    ball.dy = -ball.dy;
    events_.wall_bounce_y = true;
  }

  const int reward = resolve_bricks(prev_x, prev_y);
  resolve_paddle(prev_y);

  s.score += reward;
  if (bricks_remaining() == 0 && !s.wall_rebuilt && s.score < B::kMaxScore) {
    fill_wall();
    s.wall_rebuilt = true;
    events_.wall_rebuilt = true;
  }
  return reward;
}

bool BreakoutSim::game_over() const {
  return state_.lives <= 0 || state_.score >= B::kMaxScore;
}

Observation BreakoutSim::observe() const {
  Observation obs;
  obs.objects.emplace("Player", state_.paddle);
  obs.objects.emplace("Ball", state_.ball);
  for (int row = 0; row < 6; ++row) {
    std::vector<ObjectState> bricks;
    for (int col = 0; col < B::kBricksPerRow; ++col)
      if (state_.alive[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)])
        bricks.push_back(brick_rect(row, col));
    if (!bricks.empty()) obs.groups.emplace(B::kRowLabels[static_cast<std::size_t>(row)], std::move(bricks));
  }
  obs.lives = state_.lives;
  obs.score = state_.score;
  return obs;
}

}  // namespace codeplay::env
