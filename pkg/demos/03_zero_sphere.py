"""
Genus bounds from a zero-framed sphere
======================================

When the manifold contains a sphere of self-intersection zero whose dual
has genus g, tubing gives a surface of genus g for any knot.
"""

# %%
from plumbline import KnotRecord, certify_norman, verify_certificate, zero_sphere

for g in range(4):
    cert = certify_norman(KnotRecord("K", u_upper=5), zero_sphere(g))
    print(g, cert.verdict, cert.tubing["surface"], cert.tubing["orientation_consistent"],
          verify_certificate(cert.to_json()).ok)

# %%
# Orientation signs used for the tubed surface
cert = certify_norman(KnotRecord("K", u_upper=2), zero_sphere(1))
print(cert.orientation)
