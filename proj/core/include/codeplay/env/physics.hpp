#pragma once

// Physics constants for the three simulators, in one table.
//
// Boundaries, paddle planes, brick rows and point values mirror the numbers
// the reference agent code relies on. Speeds, cadences and cooldowns are
// tuning choices and may be changed here without touching the simulators.
// All velocities are pixels per logical step (4 emulated frames).

#include <array>

namespace codeplay::env::physics {

namespace pong {
inline constexpr int kTopWall = 30;
inline constexpr int kBottomWall = 190;
inline constexpr int kPlayerX = 140;
inline constexpr int kEnemyX = 16;
inline constexpr int kPaddleW = 4;
inline constexpr int kPaddleH = 16;
inline constexpr int kPaddleMinY = 24;
inline constexpr int kPaddleMaxY = 178;
inline constexpr int kPaddleSpeed = 4;
inline constexpr int kBallW = 2;
inline constexpr int kBallH = 4;
inline constexpr int kBallSpeedX = 4;
inline constexpr int kServeX = 78;
inline constexpr int kServeMinY = 70;
inline constexpr int kServeMaxY = 150;
inline constexpr std::array<int, 4> kServeDy{-3, -2, 2, 3};
/// Ball dy after a paddle hit, by contact zone (top of paddle first).
/// The middle zone keeps the incoming vertical direction.
inline constexpr std::array<int, 5> kZoneDy{-6, -3, 2, 3, 6};
inline constexpr int kMaxBallDy = 6;
/// Opponent tracking gain is 1/kEnemyGainDivisor, capped below kMaxBallDy.
inline constexpr int kEnemyMaxSpeed = 3;
inline constexpr int kEnemyGainDivisor = 2;
/// Opponent only reacts once the ball is on its half of the court.
inline constexpr int kEnemyReactX = 80;
inline constexpr int kWinningScore = 21;
}  // namespace pong

namespace breakout {
inline constexpr int kLeftWall = 9;
inline constexpr int kRightWall = 152;
inline constexpr int kTopWall = 31;
inline constexpr int kPaddleY = 189;
inline constexpr int kPaddleW = 16;
inline constexpr int kPaddleH = 4;
inline constexpr int kPaddleMinX = 9;
inline constexpr int kPaddleMaxX = 138;
inline constexpr int kPaddleStartX = 72;
inline constexpr int kPaddleSpeed = 4;
/// Extra catch width on each paddle edge; stands in for the ball and paddle
/// sharing the paddle row over the four frames of one step.
inline constexpr int kPaddleReach = 3;
inline constexpr int kBallW = 2;
inline constexpr int kBallH = 4;
inline constexpr int kBaseDy = 4;
/// Upper rows (red, orange) switch the ball to 1.5x speed until a life is lost.
inline constexpr int kFastDy = 6;
/// |dx| by paddle contact zone magnitude (outer, inner, centre), base and fast.
inline constexpr std::array<int, 3> kBaseDx{4, 2, 1};
inline constexpr std::array<int, 3> kFastDx{6, 3, 2};
inline constexpr int kBricksPerRow = 18;
inline constexpr int kBrickW = 8;
inline constexpr int kBrickH = 6;
inline constexpr int kBrickLeft = 9;
/// Rows top to bottom: red, orange, yellow, green, aqua, blue.
inline constexpr std::array<int, 6> kRowY{57, 63, 69, 75, 81, 87};
inline constexpr std::array<int, 6> kRowPoints{7, 7, 4, 4, 1, 1};
inline constexpr std::array<const char*, 6> kRowLabels{"RB", "OB", "YB", "GB", "AB", "BB"};
inline constexpr int kFastRows = 2;
inline constexpr int kLives = 5;
/// Two full walls; the wall is rebuilt once after being cleared.
inline constexpr int kMaxScore = 864;
/// Automatic relaunch after a life loss (and at episode start).
inline constexpr int kLaunchY = 120;
inline constexpr int kLaunchMinX = 20;
inline constexpr int kLaunchMaxX = 140;
inline constexpr std::array<int, 4> kLaunchDx{-2, -1, 1, 2};
/// The relaunch never lands within this many pixels of the resting paddle.
inline constexpr int kLaunchMissMargin = kPaddleReach + 4;
}  // namespace breakout

namespace invaders {
inline constexpr int kPlayerY = 185;
inline constexpr int kPlayerW = 7;
inline constexpr int kPlayerH = 10;
inline constexpr int kPlayerMinX = 10;
inline constexpr int kPlayerMaxX = 143;
inline constexpr int kPlayerStartX = 76;
inline constexpr int kPlayerSpeed = 3;
inline constexpr int kRows = 6;
inline constexpr int kCols = 6;
inline constexpr int kAlienW = 8;
inline constexpr int kAlienH = 10;
inline constexpr int kGridLeft = 26;
inline constexpr int kGridTop = 31;
inline constexpr int kColSpacing = 16;
inline constexpr int kRowSpacing = 14;
/// Points per alien by row, top row first (not stated by any reference; ALE-like).
inline constexpr std::array<int, 6> kRowPoints{30, 25, 20, 15, 10, 5};
inline constexpr int kMarchPeriod = 4;
inline constexpr int kMarchStep = 2;
inline constexpr int kDescendStep = 6;
inline constexpr int kFieldLeft = 10;
inline constexpr int kFieldRight = 150;
inline constexpr int kPlayerBulletDy = -12;
inline constexpr int kAlienBulletDy = 4;
inline constexpr int kBulletW = 1;
inline constexpr int kBulletH = 4;
inline constexpr int kBulletTopLimit = 20;
inline constexpr int kBulletBottomLimit = 196;
inline constexpr int kFireCooldown = 8;
inline constexpr int kAlienFirePeriod = 16;
inline constexpr int kMaxAlienBullets = 2;
/// One alien shot in kAimedFireDivisor targets the column nearest the player.
inline constexpr int kAimedFireDivisor = 2;
inline constexpr int kShieldY = 157;
inline constexpr int kShieldW = 10;
inline constexpr int kShieldH = 9;
inline constexpr std::array<int, 3> kShieldX{42, 74, 106};
inline constexpr int kShieldHitPoints = 12;
inline constexpr int kLives = 3;
}  // namespace invaders

}  // namespace codeplay::env::physics
