#!/usr/bin/env python3
"""
CubeLab Setup Script

This script sets up the CubeLab environment and runs a smoke campaign.
"""

import sys
import subprocess
from pathlib import Path


BACKEND_DIR = Path(__file__).parent


def run_command(command, description):
    """Run a command and handle errors."""
    print(f"🔄 {description}...")
    try:
        subprocess.run(command, shell=True, check=True, capture_output=True, text=True, cwd=BACKEND_DIR)
        print(f"✅ {description} completed successfully")
        return True
    except subprocess.CalledProcessError as e:
        print(f"❌ {description} failed: {e}")
        if e.stdout:
            print(f"Output: {e.stdout}")
        if e.stderr:
            print(f"Error: {e.stderr}")
        return False


def check_python():
    """Check the interpreter version."""
    print("🐍 Checking Python installation...")
    if sys.version_info < (3, 9):
        print(f"❌ Python 3.9+ required, found {sys.version.split()[0]}")
        return False
    print(f"✅ Python found: {sys.version.split()[0]}")
    return True


def install_dependencies():
    """Install Python dependencies."""
    if not (BACKEND_DIR / "requirements.txt").exists():
        print("❌ requirements.txt not found")
        return False
    return run_command(f"{sys.executable} -m pip install -r requirements.txt", "Installing dependencies")


def setup_environment():
    """Create .env from the template."""
    env_example = BACKEND_DIR / ".env.example"
    env_file = BACKEND_DIR / ".env"
    if env_file.exists():
        print("✅ .env file already exists")
        return True
    if not env_example.exists():
        print("⚠️  .env.example not found, skipping environment setup")
        return True
    print("📝 Creating .env file from template...")
    try:
        env_file.write_text(env_example.read_text())
        print("✅ .env file created successfully")
        return True
    except OSError as e:
        print(f"❌ Failed to create .env file: {e}")
        return False


def smoke_campaign():
    """Verify a small box cover end to end."""
    return run_command(
        f"{sys.executable} -m app.main campaign run --kind cover-verify --dims 1,2 --eps 1/2,1/10 --samples 50",
        "Running smoke campaign",
    )


def main():
    """Main setup function."""
    print("🚀 CubeLab Setup")
    print("=" * 40)

    steps = [
        ("Check Python", check_python),
        ("Install Dependencies", install_dependencies),
        ("Setup Environment", setup_environment),
        ("Smoke Campaign", smoke_campaign),
    ]

    success_count = 0
    for step_name, step_func in steps:
        print(f"\n📋 Step: {step_name}")
        if step_func():
            success_count += 1
        else:
            print(f"⚠️  {step_name} failed, but continuing...")

    print("\n" + "=" * 40)
    print(f"Setup completed: {success_count}/{len(steps)} steps successful")
    if success_count == len(steps):
        print("🎉 CubeLab setup completed successfully!")
        print("\nNext steps:")
        print("1. Review and update .env file if needed")
        print("2. Run: python -m app.main cover gen --dim 2 --eps 1/10")
        print("3. Run: python tests/run_tests.py")
    else:
        print("⚠️  Setup completed with some issues. Please review the output above.")
    return success_count == len(steps)


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
