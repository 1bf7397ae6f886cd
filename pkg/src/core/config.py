from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict
from dotenv import load_dotenv

# .env 파일 로드
load_dotenv()


class Settings(BaseSettings):
    """툴킷 설정 클래스"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",  # 추가 필드 무시
    )

    # 애플리케이션 기본 설정
    app_name: str = Field(default="SGT Sketch Toolkit")
    app_version: str = Field(default="0.1.0")
    debug: bool = Field(default=False)

    # 로깅 설정
    log_level: str = Field(default="WARNING")
    log_to_file: bool = Field(default=False)
    log_dir: str = Field(default="logs")

    # 시드 (CLI 플래그가 없을 때 SKETCH_SEED 사용)
    sketch_seed: int = Field(default=0, ge=0, lt=1 << 64)

    # 결정 카운터
    counter_prime_bits: int = Field(default=61, ge=8, le=62)
    counter_mr_rounds: int = Field(default=30, ge=1)

    # ℓ0 샘플러 반복 수: r = ⌈factor·(log₂N + log₂log₂α)⌉
    l0_repetition_factor: float = Field(default=4.0, gt=0)

    # 그래프 스케치 뱅크 내부 샘플러 형태
    graph_sampler_repetitions: int = Field(default=6, ge=1)
    graph_detector_repetitions: int = Field(default=2, ge=1)

    # 검증자 동등성 스케치 형태
    verifier_sampler_repetitions: int = Field(default=2, ge=1)
    verifier_detector_repetitions: int = Field(default=2, ge=1)

    # k-간선 연결성 인증서
    cert_constant: float = Field(default=20.0, gt=0)

    # 주석 스트리밍 증명
    layering_size_factor: int = Field(default=16, ge=1)
    layering_max_retries: int = Field(default=64, ge=1)
    am_terminal_factor: int = Field(default=2, ge=1)
    max_frame_bytes: int = Field(default=1 << 20, ge=16)


# 전역 설정 인스턴스 생성
settings = Settings()


def get_settings() -> Settings:
    """설정 인스턴스를 반환하는 함수"""
    return settings
