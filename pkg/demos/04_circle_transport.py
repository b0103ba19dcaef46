# Wasserstein-2 distances on the circle and on the integers.
import math

from numphase import ProbCircle, ProbInt, second_moment_circle, w2_circle, w2_integers

# a uniform phase is pi/sqrt(3) away from any point mass
grid = ProbCircle.uniform_grid(1024)
print(w2_circle(grid, ProbCircle.point(0.0)), math.pi / math.sqrt(3))
print(w2_circle(grid, ProbCircle.point(2.5)))

# antipodal pair to a quarter turn: every route costs pi/2
pair = ProbCircle.from_atoms([0.0, math.pi], [0.5, 0.5])
print(w2_circle(pair, ProbCircle.point(math.pi / 2)))

# mass near the cut is moved across it, not around
a = ProbCircle.from_atoms([0.1, 6.2], [0.5, 0.5])
b = ProbCircle.point(0.0)
print(w2_circle(a, b), math.sqrt(second_moment_circle(a)))

# rotations do not change anything
print(w2_circle(a.rotated(1.0), b.rotated(1.0)))

# integers: the monotone coupling is optimal
print(w2_integers(ProbInt.from_atoms([0, 2], [0.5, 0.5]), ProbInt.point(1)))
print(w2_integers(ProbInt.from_atoms([0, 1, 5], [0.2, 0.3, 0.5]), ProbInt.from_atoms([1, 4], [0.5, 0.5])))
