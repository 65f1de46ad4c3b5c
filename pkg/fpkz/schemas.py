"""
JSON スキーマモジュール
pydantic モデルによる入出力の検証と正準化（schema = "fpkz/1"）
"""

from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from .errors import SchemaError
from .mpoly import Poly, VecPoly

SCHEMA_VERSION = "fpkz/1"


class TermModel(BaseModel):
    """多項式の一項"""
    exp: List[int]
    coeff: int

    @field_validator("exp")
    @classmethod
    def _nonnegative(cls, value: List[int]) -> List[int]:
        if any(e < 0 for e in value):
            raise ValueError("指数は非負である必要があります")
        return value


class PolyModel(BaseModel):
    """{"p", "arity", "terms"} 形式の多項式"""
    p: int = Field(ge=2)
    arity: int = Field(ge=0)
    terms: List[TermModel] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_arity(self) -> "PolyModel":
        for term in self.terms:
            if len(term.exp) != self.arity:
                raise ValueError(f"指数ベクトルの長さ {len(term.exp)} が arity={self.arity} と一致しません")
        return self

    @classmethod
    def from_poly(cls, poly: Poly) -> "PolyModel":
        return cls.model_validate(poly.to_dict())

    def to_poly(self) -> Poly:
        return Poly.from_terms(self.p, self.arity, ((t.exp, t.coeff) for t in self.terms))


class VecPolyModel(BaseModel):
    """座標ごとの PolyModel の列"""
    p: int = Field(ge=2)
    arity: int = Field(ge=0)
    coords: List[PolyModel]

    @model_validator(mode="after")
    def _check_coords(self) -> "VecPolyModel":
        if not self.coords:
            raise ValueError("coords が空です")
        for c in self.coords:
            if c.p != self.p or c.arity != self.arity:
                raise ValueError("座標の p または arity が外側と一致しません")
        return self

    @classmethod
    def from_vecpoly(cls, vec: VecPoly) -> "VecPolyModel":
        return cls.model_validate(vec.to_dict())

    def to_vecpoly(self) -> VecPoly:
        return VecPoly([c.to_poly() for c in self.coords])


class InstanceModel(BaseModel):
    """{"p", "q", "m"} 形式のインスタンス"""
    p: int
    q: int
    m: List[int]


class SolutionDocument(BaseModel):
    """solve の出力と verify / reduce の入力"""
    schema_: Literal["fpkz/1"] = Field(default=SCHEMA_VERSION, alias="schema")
    instance: InstanceModel
    l: Optional[int] = None
    degree: Optional[int] = None
    solution: VecPolyModel

    model_config = {"populate_by_name": True}


class VerificationReportModel(BaseModel):
    schema_: Literal["fpkz/1"] = Field(default=SCHEMA_VERSION, alias="schema")
    instance: InstanceModel
    passed: bool
    algebraic_ok: bool
    standard_pass: bool
    m_weighted_pass: Optional[bool] = None
    first_failure: Optional[str] = None
    residuals: dict = Field(default_factory=dict)

    model_config = {"populate_by_name": True}


class DetReportModel(BaseModel):
    schema_: Literal["fpkz/1"] = Field(default=SCHEMA_VERSION, alias="schema")
    instance: InstanceModel
    det: PolyModel
    closed_form: PolyModel
    equal: bool
    gamma_form_sign_offset: Optional[int]
    ode_ok: bool
    degree_ok: bool
    leading_monomial_ok: bool
    divisible: bool

    model_config = {"populate_by_name": True}


class CertificateTermModel(BaseModel):
    l: int
    coeff_poly: PolyModel


class ReductionModel(BaseModel):
    """簡約証明書または Irreducible"""
    schema_: Literal["fpkz/1"] = Field(default=SCHEMA_VERSION, alias="schema")
    instance: InstanceModel
    reducible: bool
    terms: List[CertificateTermModel] = Field(default_factory=list)
    leading_coeff: Optional[List[int]] = None
    leading_exponents: Optional[List[int]] = None

    model_config = {"populate_by_name": True}


class BasisDocument(BaseModel):
    schema_: Literal["fpkz/1"] = Field(default=SCHEMA_VERSION, alias="schema")
    instance: InstanceModel
    degree: int
    basis: List[VecPolyModel]

    model_config = {"populate_by_name": True}


class InfoModel(BaseModel):
    """インスタンスの算術データ"""
    schema_: Literal["fpkz/1"] = Field(default=SCHEMA_VERSION, alias="schema")
    instance: InstanceModel
    M: List[int]
    r: int
    ample: bool
    delta: List[int]
    i_of_l: List[int]

    model_config = {"populate_by_name": True}


class LeadingModel(BaseModel):
    """σ-先頭項の予測と実際の先頭項"""
    schema_: Literal["fpkz/1"] = Field(default=SCHEMA_VERSION, alias="schema")
    instance: InstanceModel
    l: int
    sigma: List[int]
    i_of_l: int
    scalar: int
    predicted_coeff: List[int]
    predicted_exponents: List[int]
    actual_coeff: List[int]
    actual_exponents: List[int]
    match: bool
    gamma_form_sign_offset: Optional[int] = None

    model_config = {"populate_by_name": True}


class GammaModel(BaseModel):
    schema_: Literal["fpkz/1"] = Field(default=SCHEMA_VERSION, alias="schema")
    p: int
    x: int
    value: int

    model_config = {"populate_by_name": True}


class AuditModel(BaseModel):
    """ガンマ恒等式と符号ずれの監査"""
    schema_: Literal["fpkz/1"] = Field(default=SCHEMA_VERSION, alias="schema")
    p: int
    wilson: bool
    reflection: bool
    reflection_literal_at_zero: bool
    periodicity: bool
    lemma_offsets: List[Optional[int]]
    lemma_points: int
    consistent: bool

    model_config = {"populate_by_name": True}


class InitialValueModel(BaseModel):
    schema_: Literal["fpkz/1"] = Field(default=SCHEMA_VERSION, alias="schema")
    instance: InstanceModel
    point: List[int]
    w: List[int]
    coefficients: List[int]

    model_config = {"populate_by_name": True}


class UniquenessModel(BaseModel):
    schema_: Literal["fpkz/1"] = Field(default=SCHEMA_VERSION, alias="schema")
    instance: InstanceModel
    l: int
    degree: int
    unique: bool

    model_config = {"populate_by_name": True}


class CheckModel(BaseModel):
    name: str
    criterion: Optional[int] = None
    passed: bool
    cases: int
    failures: List[str] = Field(default_factory=list)
    error: Optional[str] = None
    duration_seconds: Optional[float] = None


class SelftestModel(BaseModel):
    """受け入れ検査の一括実行結果"""
    schema_: Literal["fpkz/1"] = Field(default=SCHEMA_VERSION, alias="schema")
    passed: bool
    profile: Literal["full", "quick"]
    checks: List[CheckModel]

    model_config = {"populate_by_name": True}


def dump(model: BaseModel) -> str:
    """正準 JSON（キー名は alias、インデント 2）"""
    return model.model_dump_json(by_alias=True, indent=2)


def parse_solution_document(text: str) -> SolutionDocument:
    """
    解の JSON を読み込む

    Raises:
        SchemaError: 構文エラー（行・列を含む）またはスキーマ違反
    """
    try:
        return SolutionDocument.model_validate_json(text)
    except ValidationError as e:
        raise SchemaError(_describe(e), _location(e)) from e


def _location(error: ValidationError) -> str:
    first = error.errors()[0]
    return ".".join(str(part) for part in first.get("loc", ())) or "<root>"


def _describe(error: ValidationError) -> str:
    first = error.errors()[0]
    return f"{_location(error)}: {first.get('msg', str(error))}"


def canonical_roundtrip(text: str) -> Tuple[str, str]:
    """解ドキュメントを読み込んで再出力（正準化の確認用）"""
    document = parse_solution_document(text)
    vec = document.solution.to_vecpoly()
    document.solution = VecPolyModel.from_vecpoly(vec)
    return text, dump(document)
