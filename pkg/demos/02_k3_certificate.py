"""
A sliceness certificate in K3
=============================

A knot with unknotting number at most 21 bounds a smoothly embedded disc
in punctured K3. Here the construction is carried out and checked.
"""

# %%
import json

from plumbline import KnotRecord, certify, k3, k3_plumbing, verify_certificate

p = k3_plumbing()
print(len(p.graph.vertices), "spheres,", len(p.graph.edges), "plumbings")

# %%
cert = certify(KnotRecord("K21", u_upper=21), k3())
print(cert.verdict, cert.tubing["surface"], cert.tubing["double_points"])
for line in cert.tubing["log"][:4]:
    print(line)

# %%
# The verifier rebuilds everything from the JSON alone
data = json.loads(cert.dumps())
print(verify_certificate(data).ok)

# %%
# Changing the knot's bound makes the certificate inconsistent
data["knot"]["u_upper"] = 25
print(verify_certificate(data).ok)

# %%
# Beyond the bound for K3 no certificate is produced
print(certify(KnotRecord("big", c4_upper=30), k3()).verdict)
