"""Write the STS(9) control fixture: the 12 zero-sum triples of Z_3 x Z_3.

Points are indexed as 3*a + b for (a, b) in Z_3 x Z_3. The main construction
refuses groups with 3-torsion, so this fixture is generated separately.

    python3 scripts/make_sts9_fixture.py > src/steinerpc/data/sts9.txt
"""

from itertools import combinations, product


def main():
    pts = list(product(range(3), repeat=2))
    triples = []
    for x, y, z in combinations(range(9), 3):
        if all((pts[x][i] + pts[y][i] + pts[z][i]) % 3 == 0 for i in range(2)):
            triples.append((x, y, z))
    print(f"sts v=9 b={len(triples)} source=fixture")
    print("# zero-sum triples of Z3 x Z3, point (a,b) has index 3a+b")
    for t in triples:
        print(*t)


if __name__ == "__main__":
    main()
