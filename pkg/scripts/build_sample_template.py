#!/usr/bin/env python3
"""Regenerate templates/distaf-sample.json from the compact catalog below.

The bundled template carries the six pillars with the published sample
metrics and their standards references.  Metric entries are
(code, title, kind, extras) where extras may carry a description,
transform, mandatory caps or reference list.
"""
from __future__ import annotations

import json
from pathlib import Path

B = "boolean"
P = "percentage"

SCALE_D9 = (
    "0 (0%) not configurable; 1 (25%) limited flexibility; 2 (50%) standard "
    "flexibility; 3 (75%) role-based or advanced configuration; 4 (100%) "
    "handles possible future policy changes."
)

ISO27001 = "ISO/IEC 27001:2022 (with Amendment 1:2024)"
SP80053 = "NIST SP 800-53 Rev. 5"

# pillar code, pillar name, mechanisms
CATALOG = [
    ("S", "Security", [
        ("AC", "Access Control (AC) Methods", [
            ("S.AC.D8", "Support for host-based rules", B, {}),
            ("S.AC.D9", "Flexibility to handle security-policy changes", P,
             {"description": SCALE_D9}),
            ("S.AC.O6", "Access-control policy violations are logged and reviewed", B,
             {"references": ["NISTIR 7874"]}),
            ("S.AC.O7", "Access rights are recertified on a schedule", B,
             {"references": ["NISTIR 7875"]}),
            ("S.AC.O8", "Privileged access is monitored", B,
             {"references": ["NISTIR 7876"]}),
        ], {
            "questions": [
                {
                    "phase": "design",
                    "prompt": "What is the level of AC configurability?",
                    "answers": [
                        ("a) limited or no configurability",
                         {"S.AC.D8": 0, "S.AC.D9": 0}),
                        ("b) simple level of configurability",
                         {"S.AC.D8": 0, "S.AC.D9": 25}),
                        ("c) advanced configuration",
                         {"S.AC.D8": 0, "S.AC.D9": 75}),
                        ("d) support for current and future policies",
                         {"S.AC.D8": 100, "S.AC.D9": 100}),
                    ],
                },
                {
                    "phase": "operational",
                    "prompt": "How is access control monitored in operation?",
                    "answers": [
                        ("a) no operational monitoring",
                         {"S.AC.O6": 0, "S.AC.O7": 0, "S.AC.O8": 0}),
                        ("b) periodic manual reviews",
                         {"S.AC.O6": 100, "S.AC.O7": 0, "S.AC.O8": 0}),
                        ("c) continuous automated monitoring",
                         {"S.AC.O6": 100, "S.AC.O7": 100, "S.AC.O8": 100}),
                    ],
                },
            ],
        }),
        ("SAA", "Security Assessment and Authorisation (SAA)", [
            ("S.SAA.D1", "Assessment and authorisation procedures defined", B,
             {"references": [ISO27001, "ISO/IEC 27002:2022", SP80053,
                             "ISO/IEC 27005:2018", "COBIT 2019"]}),
            ("S.SAA.D2", "Vulnerability scoring methodology selected", B,
             {"references": ["MAGERIT", "MITRE CVSS"]}),
            ("S.SAA.D5", "Continuous monitoring strategy specified", B,
             {"references": ["NIST 800-137"]}),
            ("S.SAA.D6", "Security control assessments planned", B,
             {"references": [ISO27001, "ISO/IEC 27002:2022", "ISO/IEC 27005:2018",
                             SP80053, "COBIT 2019"]}),
            ("S.SAA.D7", "Authorisation decisions documented before go-live", B,
             {"references": [ISO27001, "ISO/IEC 27002:2022", "ISO/IEC 27005:2018",
                             SP80053, "COBIT 2019"]}),
            ("S.SAA.O10", "False Rejection Rate (FRR)", P,
             {"description": "Probability (0-100%) that the authentication system "
                             "fails to match a valid input against its enrolled "
                             "entry, i.e. the share of valid attempts that are "
                             "incorrectly rejected.",
              "transform": "complement"}),
        ], {}),
        ("AAA", "Authentication, Authorisation and Accounting (AAA)", [
            ("S.AAA.D6", "Account management handbook drafted", B,
             {"references": ["NIST 800-12"]}),
            ("S.AAA.D7", "Access-control policies verified at design", B,
             {"references": ["NIST 800-192"]}),
        ], {}),
        ("PEP", "Policy Enforcement Points", [
            ("S.PEP.D1", "Policy enforcement points identified in the architecture", B,
             {"references": ["NIST IR 7874 (Policy Enforcement)"]}),
        ], {}),
        ("RC", "Regulatory Compliance", [
            ("S.RC.D1", "Management-system audit programme planned", B,
             {"references": ["ISO 19011 (Guidelines for auditing management systems)"]}),
            ("S.RC.D3", "ISMS certification targeted", B,
             {"references": ["ISO/IEC 27001 (Information Security Management Systems)"]}),
            ("S.RC.O8", "ISMS certification maintained", B,
             {"references": ["ISO 27001"]}),
            ("S.RC.O9", "Identity management conforms to ISO/IEC 24760", B,
             {"references": ["ISO 24760"]}),
            ("S.RC.O10", "Entity authentication assurance levels applied", B,
             {"references": ["ISO 29115"]}),
            ("S.RC.O11", "Access management conforms to ISO/IEC 29146", B,
             {"references": ["ISO 29146"]}),
            ("S.RC.O12", "Personal-data processing complies with the GDPR", B,
             {"references": ["GDPR"]}),
            ("S.RC.O13", "Certificate issuance follows ETSI EN 319 411", B,
             {"references": ["ETSI EN 319411"]}),
            ("S.RC.O14", "Registered delivery services follow ETSI EN 319 521", B,
             {"references": ["ETSI EN 319521"]}),
        ], {}),
        ("CP", "Cryptographic Protection", [
            ("S.CP.D3", "Key management lifecycle designed", B,
             {"references": ["NIST 800-57"]}),
        ], {}),
        ("MLP", "Maintenance and Lifecycle Protection", [
            ("S.MLP.D7", "Security-focused configuration management planned", B,
             {"references": ["NIST 800-128"]}),
        ], {}),
        ("RR", "Risk Review and Rating", [
            ("S.RR.D1", "Structured risk analysis methodology adopted", B,
             {"references": ["MAGERIT methodology"]}),
            ("S.RR.D4", "Risk management framework selected", B,
             {"references": ["ISO 27005 InfoSec Risk Management", "SP 800-37 R2"]}),
            ("S.RR.O1", "Operational risk register maintained", B,
             {"references": ["MAGERIT"]}),
            ("S.RR.O15", "Periodic risk reviews performed", B,
             {"references": ["ISO 27001:2013"]}),
        ], {}),
        ("SC", "System and Communications Protection", [
            ("S.SC.D3", "Security control baseline selected", B,
             {"references": ["NIST SP 800-53 (r4)"]}),
            ("S.SC.D4", "Firewall policy designed", B,
             {"references": ["SP 800-41 Rev. 1, Guidelines on Firewalls and Firewall Policy"]}),
            ("S.SC.D5", "Interdomain routing and DDoS mitigation planned", B,
             {"references": ["NIST SP 800-189, Resilient Interdomain Traffic Exchange"]}),
            ("S.SC.D6", "Site-to-site VPN protections specified", B,
             {"references": ["Guide to IPsec VPNs"]}),
            ("S.SC.D7", "Intrusion detection and prevention planned", B,
             {"references": ["Guide to Intrusion Detection and Prevention Systems (IDPS)"]}),
            ("S.SC.O1", "Remote access and transmission protections enforced", B,
             {"references": ["NIST SP 800-53 AC-17 (Remote Access)",
                             "NIST SP 800-53 SC-8 (Transmission Confidentiality and Integrity)"]}),
            ("S.SC.O2", "Boundary protection and partitioning enforced", B,
             {"references": ["NIST SP 800-53 SC-7 (Boundary Protection)",
                             "NIST SP 800-53 SC-32 (Information System Partitioning)"]}),
            ("S.SC.O3", "Separation of duties enforced across components", B,
             {"references": ["NIST SP 800-53 AC-5 (Separation of Duties)",
                             "NIST SP 800-53 SC-2 (Application Partitioning)"]}),
            ("S.SC.O4", "Boundary protection devices operational", B,
             {"references": ["NIST SP 800-53 SC-7 (Boundary Protection)"]}),
            ("S.SC.O5", "Incident handling procedures in operation", B,
             {"references": ["NIST SP 800-61"]}),
            ("S.SC.O6", "Remote access boundaries monitored", B,
             {"references": ["NIST SP 800-53 SC-7 (Boundary Protection)",
                             "NIST SP 800-53 AC-17 (Remote Access)"]}),
            ("S.SC.O8", "Web components covered by OWASP-aligned testing", P,
             {"description": "Share (0-100%) of web-facing components covered by "
                             "testing aligned with the OWASP guidelines.",
              "references": ["OWASP (Open Web Application Security Project) Guidelines"]}),
            ("S.SC.O9", "Authenticator and key management controls operated", B,
             {"references": ["NIST SP 800-53 IA-5 (Authenticator Management)",
                             "NIST SP 800-53 SC-12 (Cryptographic Key Establishment and Management)"]}),
        ], {
            # boundary design carries double weight within this mechanism
            "metric_weights": {
                "S.SC.D3": 2, "S.SC.D4": 1, "S.SC.D5": 1, "S.SC.D6": 1, "S.SC.D7": 1,
                "S.SC.O1": 1, "S.SC.O2": 1, "S.SC.O3": 1, "S.SC.O4": 1, "S.SC.O5": 1,
                "S.SC.O6": 1, "S.SC.O8": 1, "S.SC.O9": 1,
            },
        }),
    ]),
    ("P", "Privacy", [
        ("CDM", "Consent and Data Management", [
            ("P.CDM.D1", "Lawful basis and consent flows designed", B,
             {"references": ["GDPR (General Data Protection Regulation)"]}),
            ("P.CDM.O1", "Product quality model applied to identity data services", B,
             {"references": ["ISO/IEC 25010 (System and software quality models)"]}),
            ("P.CDM.O2", "Data quality model applied to identity records", B,
             {"references": ["ISO/IEC 25012 (Data Quality Model)"]}),
            ("P.CDM.O3", "Privacy controls operated and reviewed", B,
             {"references": ["NIST SP 800-53 (Security and Privacy Controls)"]}),
        ], {}),
        ("UC", "User Control", [
            ("P.UC.D3", "Retention periods defined for identity data", B,
             {"references": ["Data Retention and Investigatory Powers Act 2014"]}),
            ("P.UC.D4", "External dispute-resolution channel designed", B,
             {"references": ["ISO 10003 (Quality management -- Customer satisfaction)"]}),
            ("P.UC.D7", "Media sanitization procedures specified", B,
             {"references": ["NIST SP 800-88 (Guidelines for Media Sanitization)"]}),
            ("P.UC.D8", "Retention regulations mapped to data categories", B,
             {"references": ["Data Retention Regulations 2014"]}),
            ("P.UC.O1", "ICT readiness for business continuity in place", B,
             {"references": ["ISO/IEC 27031"]}),
            ("P.UC.O4", "Dispute-resolution channel operating", B,
             {"references": ["ISO 10003 (Quality management -- Customer satisfaction)"]}),
            ("P.UC.O7", "Users informed about processing of their data", B,
             {"references": ["ICO guidance: Right to be Informed"]}),
        ], {}),
        ("LAR", "Legal Accountability and Records", [
            ("P.LAR.D1", "Records management designed", B,
             {"references": ["ISO 15489 (Information and Documentation - Records Management)"]}),
            ("P.LAR.O7", "Records processing complies with data-protection law", B,
             {"references": ["Data Protection Directive"]}),
        ], {}),
        ("RIP", "Registration and Identity Proofing", [
            ("P.RIP.D1", "Trust-service alignment at design time", B,
             {"references": ["eIDAS (Electronic Identification and Trust Services)"]}),
            ("P.RIP.D2", "Enrollment and proofing designed to an assurance level", B,
             {"references": ["NIST SP 800-63A (Enrollment and Identity Proofing)"]}),
            ("P.RIP.D3", "Entity authentication assurance framework adopted", B,
             {"references": ["ISO/IEC 29115 (Entity Authentication Assurance Framework)"]}),
            ("P.RIP.D4", "Assurance levels mapped to services", B,
             {"references": ["ISO/IEC 29115 (Entity Authentication Assurance Framework)"]}),
            ("P.RIP.O2", "Proofing pipeline under continuous monitoring", P,
             {"description": "Share (0-100%) of the enrollment and proofing "
                             "pipeline covered by continuous security monitoring.",
              "references": ["NIST SP 800-137 (Information Security Continuous Monitoring)"]}),
            ("P.RIP.O3", "Proofing records managed under the ISMS", B,
             {"references": ["ISO/IEC 27001:2013"]}),
        ], {}),
        ("UL", "Unlinkability", [
            ("P.UL.D1", "Unlinkability safeguards designed", B,
             {"references": ["ISO/IEC 29100 (Privacy Framework)"]}),
            ("P.UL.O1", "Unlinkability preserved in operation", B,
             {"references": ["ISO/IEC 29100 (Privacy Framework)"]}),
        ], {}),
        ("IDA", "Identity Assurance", [
            ("P.IDA.D2", "Credential lifecycle including revocation designed", B,
             {"references": ["NIST SP 800-63B (Authentication and Lifecycle Management)"]}),
            ("P.IDA.D3", "Identity evidence validation designed", B,
             {"references": ["NIST SP 800-63A (Enrollment and Identity Proofing)"]}),
            ("P.IDA.D4", "Key management for credentials designed", B,
             {"references": ["NIST SP 800-57 (Recommendation for Key Management)"]}),
        ], {}),
        ("PIA", "Privacy Impact Assessment", [
            ("P.PIA.D1", "Data protection impact assessment performed", B,
             {"references": ["ICO guidance: Data Protection Impact Assessments"]}),
            ("P.PIA.D3", "Impact assessment follows recognised guidelines", B,
             {"references": ["ISO/IEC 29134 (Guidelines for privacy impact assessment)"]}),
            ("P.PIA.O1", "Transparency obligations met in operation", B,
             {"references": ["GDPR (General Data Protection Regulation)"]}),
            ("P.PIA.O3", "Privacy information management system operated", B,
             {"references": ["ISO/IEC 27701 (Privacy Information Management System)"]}),
            ("P.PIA.O4", "Privacy management system audited", B,
             {"references": ["ISO/IEC 27701 (Privacy Information Management System)"]}),
            ("P.PIA.O6", "Privacy risk outcomes tracked", B,
             {"references": ["NIST Privacy Framework"]}),
        ], {
            "questions": [
                {
                    "phase": "design",
                    "prompt": "How was privacy impact assessed during design?",
                    "answers": [
                        ("a) no privacy impact assessment",
                         {"P.PIA.D1": 0, "P.PIA.D3": 0}),
                        ("b) informal assessment performed",
                         {"P.PIA.D1": 100, "P.PIA.D3": 0}),
                        ("c) assessment per recognised guidelines",
                         {"P.PIA.D1": 100, "P.PIA.D3": 100}),
                    ],
                },
            ],
        }),
        ("PRMP", "Privacy Risk Management Practices", [
            ("P.PRMP.O5", "Supply-chain privacy risks managed", B,
             {"references": ["NIST SP 800-161 (Supply Chain Risk Management Practices)"]}),
        ], {}),
        ("WDPP", "Written Data Protection Policies", [
            ("P.WDPP.O4", "Impact-assessment policy maintained", B,
             {"references": ["ISO/IEC 29134 (Guidelines for privacy impact assessment)"]}),
        ], {}),
        ("SU", "Service Usage Protection", [
            ("P.SU.O2", "Firewall policy protects personal-data flows", B,
             {"references": ["NIST SP 800-41 (Guidelines on Firewalls and Firewall Policy)"]}),
            ("P.SU.O3", "Access policies verified in operation", B,
             {"references": ["NIST SP 800-192 (Verification and Test Methods for Access Control Policies)"]}),
        ], {}),
        ("PS", "Privacy Safeguards", [
            ("P.PS.D1", "Authenticator privacy requirements designed", B,
             {"references": ["NIST SP 800-63B (Authentication and Lifecycle Management)"]}),
            ("P.PS.O1", "Privacy engineering practices in operation", B,
             {"references": ["https://www.iso.org/standard/71670.html"]}),
            ("P.PS.O2", "GDPR-aligned operating procedures", B,
             {"references": ["https://gdpr-info.eu"]}),
            ("P.PS.O3", "Cybersecurity certification scheme considered", B,
             {"references": ["EU Cybersecurity Act"]}),
            ("P.PS.O4", "Consumer IoT and service privacy baseline applied", B,
             {"references": ["https://www.iso.org/standard/72024.html"]}),
            ("P.PS.O5", "Privacy-aware incident handling", B,
             {"references": ["https://www.iso.org/standard/45124.html"]}),
        ], {}),
    ]),
    ("E", "Ethics", [
        ("OP", "Operational Practices", [
            ("E.OP.D1", "Approved encryption algorithms selected", B,
             {"references": ["ISO/IEC 18033 (Encryption algorithms)"]}),
            ("E.OP.O1", "Staff covered by the awareness and training programme", P,
             {"description": "Share (0-100%) of staff who completed the security "
                             "awareness and training programme.",
              "references": ["NIST SP 800-50 (Building an Information Technology "
                             "Security Awareness and Training Program)"]}),
        ], {}),
    ]),
    ("RES", "Resiliency", [
        ("RS", "Recovery Services", [
            ("RES.RS.O1", "Contingency controls operational", B,
             {"references": ["NIST SP 800-53 (r4)"]}),
        ], {}),
        ("IDR", "Identity Recovery", [
            ("RES.IDR.D1", "Identity recovery procedures specified at design", B, {}),
            ("RES.IDR.O1", "Recovery requests resolved within the target time", P,
             {"description": "Share (0-100%) of identity recovery requests "
                             "resolved within the published target time."}),
            ("RES.IDR.O6", "Automated password recovery system", B,
             {"description": "An automated self-service password recovery path "
                             "is available to end users; considered essential "
                             "for the identity recovery mechanism.",
              "mandatory": {"mechanism_cap": 40, "pillar_cap": 80}}),
        ], {}),
    ]),
    ("ROB", "Robustness", [
        ("CT", "Change Tolerance", [
            ("ROB.CT.D1", "Graceful degradation designed for component failures", B, {}),
            ("ROB.CT.D2", "Input validation covers malformed identity data", B, {}),
            ("ROB.CT.O1", "Service level maintained under fault injection", P,
             {"description": "Share (0-100%) of the nominal service level "
                             "sustained during fault-injection exercises."}),
        ], {}),
    ]),
    ("REL", "Reliability", [
        ("SUS", "Service Sustainability", [
            ("REL.SUS.D1", "Sustainable digital-identity service model", B,
             {"references": ["FATF Guidance on Digital Identity"]}),
        ], {}),
        ("AL", "Assurance Levels", [
            ("REL.AL.D1", "Travel-document data model compatibility", B,
             {"references": ["ICAO 9303"]}),
            ("REL.AL.O7", "Operational authentication assurance maintained", B,
             {"references": ["ISO/IEC 29115:2013"]}),
            ("REL.AL.O8", "Identity proofing assurance maintained", B,
             {"references": ["ISO/IEC TS 29003"]}),
            ("REL.AL.O9", "Identity management assurance maintained", B,
             {"references": ["ISO 24760"]}),
            ("REL.AL.O10", "Declared eIDAS assurance level maintained", B,
             {"references": ["eIDAS"]}),
        ], {}),
        ("GA", "Governance and Accreditation", [
            ("REL.GA.O1", "Certification body requirements met", B,
             {"references": ["ISO/IEC 17065 (Conformity assessment)"]}),
        ], {}),
        ("HUT", "Historical Usage Tracking", [
            ("REL.HUT.D1", "Security log management designed", B,
             {"references": ["NIST SP 800-92 (Guide to Computer Security Log Management)"]}),
        ], {}),
    ]),
]

STANDARDS = [
    ("CIS-Controls", "CIS Critical Security Controls",
     ["S.SC.D3", "S.SC.D4", "S.SC.D6", "S.SC.D7", "S.SC.O4", "S.SC.O5", "S.AC.O6"]),
    ("GDPR", "General Data Protection Regulation (GDPR)",
     ["S.RC.O12", "P.CDM.D1"]),
    ("ISO-27001", "ISO/IEC 27001 Information Security Management",
     ["S.SAA.D1", "S.SAA.D6", "S.RC.D3", "S.RC.O8", "S.RR.O15", "P.RIP.O3"]),
    ("eIDAS", "eIDAS Regulation (EU) 910/2014",
     ["P.RIP.D1", "REL.AL.O10"]),
    ("NIST-SP-800-63", "NIST SP 800-63 Digital Identity Guidelines",
     ["P.RIP.D2", "P.IDA.D2", "P.IDA.D3", "P.PS.D1"]),
]


def build() -> dict:
    pillars = []
    for pillar_code, pillar_name, mechanisms in CATALOG:
        mech_docs = []
        for mech_code, mech_name, metrics, extras in mechanisms:
            metric_docs = []
            for code, title, kind, m_extras in metrics:
                doc = {"code": code, "title": title, "kind": kind}
                if m_extras.get("description"):
                    doc["description"] = m_extras["description"]
                if m_extras.get("transform"):
                    doc["transform"] = m_extras["transform"]
                if m_extras.get("mandatory"):
                    doc["mandatory"] = m_extras["mandatory"]
                if m_extras.get("references"):
                    doc["references"] = m_extras["references"]
                metric_docs.append(doc)
            mech_doc = {"code": mech_code, "name": mech_name, "metrics": metric_docs}
            if extras.get("metric_weights"):
                mech_doc["metric_weights"] = extras["metric_weights"]
            if extras.get("questions"):
                mech_doc["cluster_questions"] = [
                    {
                        "phase": q["phase"],
                        "prompt": q["prompt"],
                        "answers": [
                            {"label": label, "configuration": config}
                            for label, config in q["answers"]
                        ],
                    }
                    for q in extras["questions"]
                ]
            mech_docs.append(mech_doc)
        pillars.append({"code": pillar_code, "name": pillar_name, "mechanisms": mech_docs})
    return {
        "id": "distaf-sample",
        "version": "1.0",
        "pillars": pillars,
        "standards": [
            {"standard_id": sid, "display_name": name, "satisfied_metrics": codes}
            for sid, name, codes in STANDARDS
        ],
    }


def main() -> None:
    out = Path(__file__).resolve().parent.parent / "templates" / "distaf-sample.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(build(), indent=2) + "\n", encoding="utf-8")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
